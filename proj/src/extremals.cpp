#include "onofri/extremals.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "onofri/lorentz.hpp"
#include "onofri/parallel.hpp"

namespace onofri {

namespace {

double norm2(const Vec3& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }

std::vector<double> moment_integrals(const ConformalMap& tau, const SphericalGrid& g) {
  const std::size_t n = g.size();
  std::vector<double> j32(n), x(n), y(n), z(n);
  parallel_for(n, [&](std::size_t i) {
    const Point3& w = g.nodes()[i];
    const double j = jacobian(tau, w);
    j32[i] = j * std::sqrt(j);
    x[i] = w.w1() * j32[i];
    y[i] = w.w2() * j32[i];
    z[i] = w.w3() * j32[i];
  });
  return {integrate(g, j32), integrate(g, x), integrate(g, y), integrate(g, z)};
}

}  // namespace

MassMoments mass_moments(const ConformalMap& tau, const SphericalGrid& start,
                         const QuadraturePolicy& policy) {
  MassMoments out;
  out.quadrature = integrate_adaptive(
      start, policy, [&](const SphericalGrid& g) { return moment_integrals(tau, g); });
  const auto& v = out.quadrature.values;
  out.mass = v[0];
  out.com = {v[1] / v[0], v[2] / v[0], v[3] / v[0]};
  return out;
}

double mass_numeric(const ConformalMap& tau, const SphericalGrid& start,
                    const QuadraturePolicy& policy) {
  const MassMoments m = mass_moments(tau, start, policy);
  if (!m.quadrature.converged) {
    throw ConvergenceError("mass_numeric: refinement cap reached (last change " +
                           std::to_string(m.quadrature.last_change) + ")");
  }
  return m.mass;
}

Vec3 com_numeric(const ConformalMap& tau, const SphericalGrid& start,
                 const QuadraturePolicy& policy) {
  const MassMoments m = mass_moments(tau, start, policy);
  if (!m.quadrature.converged) {
    throw ConvergenceError("com_numeric: refinement cap reached (last change " +
                           std::to_string(m.quadrature.last_change) + ")");
  }
  return m.com;
}

double mass_closed_form(const Generator& g) {
  switch (g.kind) {
    case Generator::Kind::dilation:
      if (!(g.lambda > 0.0)) throw std::invalid_argument("mass_closed_form: lambda must be > 0");
      return (1.0 + g.lambda * g.lambda) / (2.0 * g.lambda);
    case Generator::Kind::translation: {
      const double p3 = g.p.w3();
      if (stereo_project(g.p).is_infinite()) {
        throw std::invalid_argument("mass_closed_form: translation target is the north pole");
      }
      return 0.5 * (3.0 - p3) / (1.0 - p3);
    }
    case Generator::Kind::rotation:
    case Generator::Kind::inversion:
      return 1.0;
  }
  throw std::invalid_argument("mass_closed_form: unknown generator");
}

Vec3 com_closed_form(const Generator& g) {
  switch (g.kind) {
    case Generator::Kind::dilation: {
      if (!(g.lambda > 0.0)) throw std::invalid_argument("com_closed_form: lambda must be > 0");
      const double l2 = g.lambda * g.lambda;
      return {0.0, 0.0, (1.0 - l2) / (1.0 + l2)};
    }
    case Generator::Kind::translation: {
      if (stereo_project(g.p).is_infinite()) {
        throw std::invalid_argument("com_closed_form: translation target is the north pole");
      }
      const double s = 1.0 / (3.0 - g.p.w3());
      return {-2.0 * g.p.w1() * s, -2.0 * g.p.w2() * s, (1.0 + g.p.w3()) * s};
    }
    case Generator::Kind::rotation:
    case Generator::Kind::inversion:
      return {0.0, 0.0, 0.0};
  }
  throw std::invalid_argument("com_closed_form: unknown generator");
}

double frobenius_mass(const ConformalMap& tau) { return 0.5 * tau.mobius.frobenius2(); }

double Extremal::psi(const Point3& w) const {
  return 0.75 * std::log(jacobian(tau, w)) + normalizer;
}

namespace {

void check_extremal(const Extremal& e) {
  if (!(e.mass >= 1.0 - 1e-10)) {
    throw InvariantViolation("extremal: mass " + std::to_string(e.mass) + " below 1");
  }
  const double a2 = norm2(e.com);
  if (!(a2 < 1.0)) throw InvariantViolation("extremal: center of mass outside the unit ball");
  const double lhs = std::exp(4.0 * e.normalizer);
  if (!(std::abs(lhs - (1.0 - a2)) <= 1e-8)) {
    throw InvariantViolation("extremal: e^{4c} = " + std::to_string(lhs) + " but 1 - |a|^2 = " +
                             std::to_string(1.0 - a2));
  }
}

}  // namespace

Extremal build_extremal(const ConformalMap& tau, const SphericalGrid& start,
                        const QuadraturePolicy& policy) {
  const MassMoments m = mass_moments(tau, start, policy);
  if (!m.quadrature.converged) {
    throw ConvergenceError("build_extremal: refinement cap reached (last change " +
                           std::to_string(m.quadrature.last_change) + ")");
  }
  Extremal e{tau, m.mass, m.com, -0.5 * std::log(m.mass), m.quadrature.grid};
  check_extremal(e);
  return e;
}

Extremal build_extremal(const ConformalMap& tau, const QuadraturePolicy& policy) {
  return build_extremal(tau, policy.start_grid(0), policy);
}

Extremal closed_form_extremal(const ConformalMap& tau) {
  // An orientation-reversing map has the Jacobian of its conjugate matrix
  // evaluated at the reflected point, so its center of mass is reflected too.
  const LorentzMatrix l = lorentz_lift(tau.mobius);
  const double m = l(0, 0);
  Vec3 a{-l(0, 1) / m, -l(0, 2) / m, -l(0, 3) / m};
  if (tau.reflect) a[1] = -a[1];
  Extremal e{tau, frobenius_mass(tau), a, -0.5 * std::log(frobenius_mass(tau)), {}};
  return e;
}

ProjectedField project(const GridField& samples, int l_max) {
  ProjectedField out{analyze(samples, l_max), 0.0, samples.grid().descriptor()};
  const GridField back = synthesize(out.field, samples.grid());
  std::vector<double> r(samples.samples().size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double d = samples.samples()[i] - back.samples()[i];
    r[i] = d * d;
  }
  out.tail = std::sqrt(std::max(0.0, integrate(samples.grid(), r)));
  return out;
}

ProjectedField psi_field(const Extremal& e, int l_max, const SphericalGrid& grid,
                         double tail_threshold) {
  std::vector<double> s(grid.size());
  parallel_for(s.size(), [&](std::size_t i) { s[i] = e.psi(grid.nodes()[i]); });
  ProjectedField out = project(GridField(grid, std::move(s)), l_max);
  if (!(out.tail <= tail_threshold)) {
    throw ConvergenceError("psi_field: projection tail " + std::to_string(out.tail) +
                           " exceeds threshold at l_max " + std::to_string(l_max));
  }
  return out;
}

double tauhalf_residual(const Extremal& e, const SphericalGrid& grid) {
  const double a2 = norm2(e.com);
  double worst = 0.0;
  for (const Point3& w : grid.nodes()) {
    const double rhs = (1.0 - a2) / (1.0 - w.dot(e.com)) * e.mass;
    worst = std::max(worst, std::abs(std::sqrt(jacobian(e.tau, w)) - rhs));
  }
  return worst;
}

double el_residual(const Extremal& e, int l_max, const SphericalGrid& grid) {
  const ProjectedField psi = psi_field(e, l_max, grid, std::numeric_limits<double>::infinity());
  const auto p = synthesize(psi.field, grid).samples();
  const auto lap = synthesize(laplacian(psi.field), grid).samples();
  const double a2 = norm2(e.com);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point3& w = grid.nodes()[i];
    const double r = (2.0 / 3.0) * lap[i] + (1.0 - w.dot(e.com)) / (1.0 - a2) * std::exp(2.0 * p[i]) - 1.0;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace onofri
