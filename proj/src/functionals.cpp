#include "onofri/functionals.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "onofri/parallel.hpp"

namespace onofri {

double ExpMoments::log_mass() const { return 2.0 * shift + std::log(m0); }

double ExpMoments::half_log_lorentzian() const {
  const double q = m0 * m0 - (m1[0] * m1[0] + m1[1] * m1[1] + m1[2] * m1[2]);
  if (!(q > 0.0)) {
    throw InvariantViolation("lorentzian bracket is not positive (" + std::to_string(q) +
                             "); quadrature is broken");
  }
  return 2.0 * shift + 0.5 * std::log(q);
}

namespace {

std::vector<double> exp_integrals(const HarmonicField& u, double shift, const SphericalGrid& g) {
  const auto s = synthesize(u, g).samples();
  const std::size_t n = g.size();
  std::vector<double> e(n), x(n), y(n), z(n);
  parallel_for(n, [&](std::size_t i) {
    const Point3& w = g.nodes()[i];
    e[i] = std::exp(2.0 * (s[i] - shift));
    x[i] = w.w1() * e[i];
    y[i] = w.w2() * e[i];
    z[i] = w.w3() * e[i];
  });
  return {integrate(g, e), integrate(g, x), integrate(g, y), integrate(g, z)};
}

double log_change(const std::vector<double>& a, const std::vector<double>& b) {
  // Absolute change of ln m0 and of the half log-lorentzian, which enter the
  // functionals directly, plus the relative change of the raw moments.
  auto lorentz = [](const std::vector<double>& v) {
    return v[0] * v[0] - v[1] * v[1] - v[2] * v[2] - v[3] * v[3];
  };
  const double qa = lorentz(a), qb = lorentz(b);
  if (!(qa > 0.0 && qb > 0.0 && a[0] > 0.0 && b[0] > 0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  const double d = std::max(std::abs(std::log(a[0] / b[0])), 0.5 * std::abs(std::log(qa / qb)));
  double scale = 1.0, diff = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    diff = std::max(diff, std::abs(a[k] - b[k]));
    scale = std::max(scale, std::abs(b[k]));
  }
  return std::max(d, diff / scale);
}

}  // namespace

ExpMoments exp_moments(const HarmonicField& u, const SphericalGrid& start,
                       const QuadraturePolicy& policy) {
  if (start.band_limit_exact() < u.l_max()) {
    throw std::invalid_argument("exp_moments: start grid cannot resolve the field");
  }
  ExpMoments out;
  out.shift = u.mean();
  out.quadrature = integrate_adaptive(
      start, policy, [&](const SphericalGrid& g) { return exp_integrals(u, out.shift, g); },
      log_change);
  const auto& v = out.quadrature.values;
  out.m0 = v[0];
  out.m1 = {v[1], v[2], v[3]};
  return out;
}

FunctionalReport chang_gui_I(double alpha, const HarmonicField& u, const SphericalGrid& start,
                             const QuadraturePolicy& policy) {
  const ExpMoments m = exp_moments(u, start, policy);
  FunctionalReport r;
  r.alpha = alpha;
  r.energy = dirichlet_energy(u);
  r.mean = u.mean();
  r.log_mass = m.log_mass();
  const double half_log_lor = m.half_log_lorentzian();
  r.lorentzian = std::exp(2.0 * half_log_lor);
  if (std::isnormal(r.lorentzian)) {
    r.value = alpha * r.energy + 2.0 * r.mean - 0.5 * std::log(r.lorentzian);
  } else {
    r.value = alpha * r.energy + 2.0 * r.mean - half_log_lor;
  }
  r.grid = m.quadrature.grid;
  r.converged = m.quadrature.converged;
  return r;
}

FunctionalReport chang_gui_I(double alpha, const HarmonicField& u, const QuadraturePolicy& policy) {
  return chang_gui_I(alpha, u, policy.start_grid(u.l_max()), policy);
}

double onofri_J(double alpha, const HarmonicField& u, const SphericalGrid& start,
                const QuadraturePolicy& policy) {
  const ExpMoments m = exp_moments(u, start, policy);
  if (!m.quadrature.converged) {
    throw ConvergenceError("onofri_J: refinement cap reached (last change " +
                           std::to_string(m.quadrature.last_change) + ")");
  }
  return alpha * dirichlet_energy(u) + 2.0 * u.mean() - m.log_mass();
}

GridField transform_samples(const HarmonicField& u, const Extremal& e, const SphericalGrid& grid) {
  std::vector<Point3> moved;
  moved.reserve(grid.size());
  for (const Point3& w : grid.nodes()) moved.push_back(apply(e.tau, w));
  std::vector<double> s = evaluate(u, moved);
  parallel_for(s.size(), [&](std::size_t i) { s[i] += e.psi(grid.nodes()[i]); });
  return GridField(grid, std::move(s));
}

ProjectedField transform(const HarmonicField& u, const Extremal& e, int l_max,
                         const SphericalGrid& grid, const QuadraturePolicy& policy) {
  ProjectedField out = project(transform_samples(u, e, grid), l_max);
  if (!(out.tail <= policy.tail_threshold)) {
    throw ConvergenceError("transform: projection tail " + std::to_string(out.tail) +
                           " exceeds threshold at l_max " + std::to_string(l_max));
  }
  return out;
}

ProjectedField transform(const HarmonicField& u, const ConformalMap& tau, int l_max,
                         const SphericalGrid& grid, const QuadraturePolicy& policy) {
  return transform(u, build_extremal(tau, policy), l_max, grid, policy);
}

double cg_bound_slack(double alpha, const HarmonicField& u, const SphericalGrid& start,
                      const QuadraturePolicy& policy) {
  if (!(alpha >= 2.0 / 3.0 - 1e-15)) {
    throw std::invalid_argument("cg_bound_slack: alpha must be >= 2/3");
  }
  const FunctionalReport r = chang_gui_I(alpha, u, start, policy);
  if (!r.converged) throw ConvergenceError("cg_bound_slack: functional did not converge");
  return r.value - (alpha - 2.0 / 3.0) * r.energy;
}

InvarianceCheck dirichlet_invariance_check(const HarmonicField& u, const ConformalMap& tau,
                                           int l_max, const SphericalGrid& grid) {
  std::vector<Point3> moved;
  moved.reserve(grid.size());
  for (const Point3& w : grid.nodes()) moved.push_back(apply(tau, w));
  const ProjectedField p = project(GridField(grid, evaluate(u, moved)), l_max);
  return {std::abs(dirichlet_energy(p.field) - dirichlet_energy(u)), p.tail};
}

}  // namespace onofri
