#include "onofri/stability.hpp"

#include <cmath>
#include <limits>

#include "onofri/sampling.hpp"

namespace onofri {

ConformalMap ManifoldPoint::tau() const {
  return compose(dilation(std::exp(log_lambda)), translation(Complex(beta1, beta2)));
}

bool ManifoldPoint::in_box() const {
  return std::abs(log_lambda) <= kLogLambdaMax && std::hypot(beta1, beta2) <= kBetaMax;
}

bool ManifoldPoint::near_boundary(double margin) const {
  return std::abs(log_lambda) >= kLogLambdaMax - margin ||
         std::hypot(beta1, beta2) >= kBetaMax - margin;
}

ManifoldPoint ManifoldPoint::from_map(const ConformalMap& tau) {
  const MobiusMap m = tau.reflect ? tau.mobius.conj() : tau.mobius;
  const double lambda = std::norm(m.a()) + std::norm(m.c());
  const Complex beta = (std::conj(m.a()) * m.b() + std::conj(m.c()) * m.d()) / lambda;
  return {std::log(lambda), beta.real(), beta.imag()};
}

double grad_distance(const HarmonicField& u, const ManifoldPoint& m, int l_max,
                     const SphericalGrid& grid, const QuadraturePolicy& policy) {
  if (l_max < u.l_max()) throw std::invalid_argument("grad_distance: l_max below the field's");
  const ProjectedField psi =
      psi_field(closed_form_extremal(m.tau()), l_max, grid, policy.tail_threshold);
  return dirichlet_energy(u.resized(l_max) - psi.field);
}

namespace {

ManifoldPoint point_of(const std::vector<double>& x) { return {x[0], x[1], x[2]}; }

bool lex_less(const ManifoldPoint& a, const ManifoldPoint& b) {
  if (a.log_lambda != b.log_lambda) return a.log_lambda < b.log_lambda;
  if (a.beta1 != b.beta1) return a.beta1 < b.beta1;
  return a.beta2 < b.beta2;
}

std::vector<std::pair<std::string, ManifoldPoint>> starts(const HarmonicField& u,
                                                          const StabilityOptions& o) {
  std::vector<std::pair<std::string, ManifoldPoint>> out;
  out.emplace_back("identity", ManifoldPoint{});
  try {
    const PlanePoint x0 = solve_x0(u, o.policy);
    const double l0 = lambda0_closed_form(u, x0, o.policy);
    out.emplace_back("normalization", ManifoldPoint::from_map(invert(normalizing_map(x0, l0))));
  } catch (const std::runtime_error&) {
  }
  Rng rng(o.seed);
  for (int k = 0; k < o.random_starts; ++k) {
    const double ll = rng.uniform(-o.random_log_lambda, o.random_log_lambda);
    const Complex b = random_disk(rng, o.random_beta);
    out.emplace_back("random", ManifoldPoint{ll, b.real(), b.imag()});
  }
  return out;
}

}  // namespace

DistanceResult distance_to_manifold(const HarmonicField& u, int l_max, const SphericalGrid& grid,
                                    const StabilityOptions& options) {
  auto objective = [&](const std::vector<double>& x) {
    const ManifoldPoint m = point_of(x);
    if (!m.in_box()) return std::numeric_limits<double>::infinity();
    try {
      return grad_distance(u, m, l_max, grid, options.policy);
    } catch (const ConvergenceError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  DistanceResult out;
  out.distance = std::numeric_limits<double>::infinity();
  bool any_inside = false;
  for (const auto& [kind, start] : starts(u, options)) {
    StartRecord rec;
    rec.kind = kind;
    rec.start = start;
    const std::vector<double> x0{start.log_lambda, start.beta1, start.beta2};
    rec.start_value = objective(x0);
    if (!std::isfinite(rec.start_value)) {
      rec.end = start;
      rec.value = rec.start_value;
      rec.at_boundary = true;
      out.trace.push_back(rec);
      continue;
    }
    const SimplexResult r = nelder_mead(objective, x0, options.simplex);
    rec.end = point_of(r.x);
    rec.value = r.value;
    rec.evaluations = r.evaluations;
    rec.converged = r.converged;
    rec.at_boundary = rec.end.near_boundary();
    any_inside = any_inside || !rec.at_boundary;
    out.trace.push_back(rec);
    if (r.value < out.distance || (r.value == out.distance && lex_less(rec.end, out.argmin))) {
      out.distance = r.value;
      out.argmin = rec.end;
      out.converged = r.converged && !rec.at_boundary;
    }
  }
  out.all_at_boundary = !any_inside;
  return out;
}

StabilityReport stability_check(const HarmonicField& u, int l_max, const SphericalGrid& grid,
                                const StabilityOptions& options) {
  StabilityReport r;
  const FunctionalReport f = chang_gui_I(2.0 / 3.0, u, options.policy);
  r.deficit = f.value;
  r.deficit_converged = f.converged;
  const DistanceResult d = distance_to_manifold(u, l_max, grid, options);
  r.distance = d.distance;
  r.distance_converged = d.converged;
  r.argmin = d.argmin;
  r.trace = d.trace;
  for (const StartRecord& s : d.trace) {
    r.evaluations += s.evaluations;
    if (s.kind == "normalization" && d.distance > 0.0) r.warm_start_ratio = s.start_value / d.distance;
  }
  r.slack = r.deficit - r.distance / 6.0;
  if (r.deficit_converged && r.distance_converged && !(r.slack >= -1e-8)) {
    throw InvariantViolation("stability_check: slack " + std::to_string(r.slack) +
                             " below -1e-8 (deficit " + std::to_string(r.deficit) +
                             ", distance " + std::to_string(r.distance) + ")");
  }
  return r;
}

}  // namespace onofri
