#include "onofri/normalize.hpp"

#include <cmath>
#include <map>
#include <string>

#include "onofri/parallel.hpp"

namespace onofri {

namespace {

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

ExpMoments converged_moments(const HarmonicField& u, const QuadraturePolicy& policy,
                             const char* who) {
  ExpMoments m = exp_moments(u, policy.start_grid(u.l_max()), policy);
  if (!m.quadrature.converged) {
    throw ConvergenceError(std::string(who) + ": refinement cap reached (last change " +
                           std::to_string(m.quadrature.last_change) + ")");
  }
  return m;
}

QuadraturePolicy tight(const QuadraturePolicy& policy) {
  QuadraturePolicy p = policy;
  p.rel_tol = std::min(policy.rel_tol, 1e-12);
  return p;
}

double com_change(const std::vector<double>& a, const std::vector<double>& b) {
  if (!(a[0] > 0.0 && b[0] > 0.0)) return std::numeric_limits<double>::infinity();
  double d = std::abs(a[0] - b[0]) / b[0];
  for (int k = 1; k < 4; ++k) d = std::max(d, std::abs(a[k] / a[0] - b[k] / b[0]));
  return d;
}

AdaptiveResult com_ladder(const HarmonicField& u, const ConformalMap& tau,
                         const QuadraturePolicy& policy, int skip = 0) {
  const Extremal e = closed_form_extremal(tau);
  const double shift = u.mean();
  auto integrals = [&](const SphericalGrid& g) {
    const std::size_t n = g.size();
    std::vector<Point3> moved;
    moved.reserve(n);
    for (const Point3& w : g.nodes()) moved.push_back(apply(tau, w));
    const std::vector<double> s = evaluate(u, moved);
    std::vector<double> e0(n), x(n), y(n), z(n);
    parallel_for(n, [&](std::size_t i) {
      const Point3& w = g.nodes()[i];
      e0[i] = std::exp(2.0 * (s[i] - shift + e.psi(w)));
      x[i] = w.w1() * e0[i];
      y[i] = w.w2() * e0[i];
      z[i] = w.w3() * e0[i];
    });
    return std::vector<double>{integrate(g, e0), integrate(g, x), integrate(g, y), integrate(g, z)};
  };
  SphericalGrid start = policy.start_grid(u.l_max());
  for (int k = 0; k < skip && start.theta_count() < policy.max_theta; ++k) {
    start = start.refined(policy.growth);
  }
  AdaptiveResult r = integrate_adaptive(start, policy, integrals, com_change);
  r.refinements += skip;
  return r;
}

// e^{2(u - mean)} on the ladder grids, kept across bisection steps.
class ExpSamples {
 public:
  explicit ExpSamples(const HarmonicField& u) : u_(u) {}

  const std::vector<double>& on(const SphericalGrid& g) {
    const auto key = std::make_pair(g.theta_count(), g.phi_count());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<double> s = synthesize(u_, g).samples();
    const double shift = u_.mean();
    for (double& x : s) x = std::exp(2.0 * (x - shift));
    return cache_.emplace(key, std::move(s)).first->second;
  }

 private:
  const HarmonicField& u_;
  std::map<std::pair<int, int>, std::vector<double>> cache_;
};

// Same moments as com_ladder after substituting v = tau(w):
// int f(w) e^{2 u(tau w)} J_tau(w)^{3/2} dw = int f(tau^-1 v) e^{2 u(v)} J_{tau^-1}(v)^{-1/2} dv,
// so u is only ever sampled on the fixed ladder grids.
AdaptiveResult pulled_back_ladder(const HarmonicField& u, ExpSamples& samples,
                                  const ConformalMap& tau, const QuadraturePolicy& policy,
                                  int skip) {
  const ConformalMap inv = invert(tau);
  auto integrals = [&](const SphericalGrid& g) {
    const std::vector<double>& e = samples.on(g);
    const std::size_t n = g.size();
    std::vector<double> e0(n), x(n), y(n), z(n);
    parallel_for(n, [&](std::size_t i) {
      const Point3& v = g.nodes()[i];
      const Point3 w = apply(inv, v);
      e0[i] = e[i] / std::sqrt(jacobian(inv, v));
      x[i] = w.w1() * e0[i];
      y[i] = w.w2() * e0[i];
      z[i] = w.w3() * e0[i];
    });
    return std::vector<double>{integrate(g, e0), integrate(g, x), integrate(g, y), integrate(g, z)};
  };
  SphericalGrid start = policy.start_grid(u.l_max());
  for (int k = 0; k < skip && start.theta_count() < policy.max_theta; ++k) {
    start = start.refined(policy.growth);
  }
  AdaptiveResult r = integrate_adaptive(start, policy, integrals, com_change);
  r.refinements += skip;
  return r;
}

}  // namespace

Vec3 com_of_exp(const HarmonicField& u, const QuadraturePolicy& policy) {
  const ExpMoments m = converged_moments(u, policy, "com_of_exp");
  return {m.m1[0] / m.m0, m.m1[1] / m.m0, m.m1[2] / m.m0};
}

Vec3 transformed_com(const HarmonicField& u, const ConformalMap& tau,
                     const QuadraturePolicy& policy) {
  const AdaptiveResult r = com_ladder(u, tau, policy);
  if (!r.converged) {
    throw ConvergenceError("transformed_com: refinement cap reached (last change " +
                           std::to_string(r.last_change) + ")");
  }
  return {r.values[1] / r.values[0], r.values[2] / r.values[0], r.values[3] / r.values[0]};
}

PlanePoint solve_x0(const HarmonicField& u, const QuadraturePolicy& policy) {
  const ExpMoments m = converged_moments(u, policy, "solve_x0");
  const double d = m.m0 - m.m1[2];
  return PlanePoint::at(m.m1[0] / d, m.m1[1] / d);
}

double lambda0_closed_form(const HarmonicField& u, const PlanePoint& x0,
                           const QuadraturePolicy& policy) {
  if (x0.is_infinite()) throw std::invalid_argument("lambda0_closed_form: x0 must be finite");
  const ExpMoments m = converged_moments(u, policy, "lambda0_closed_form");
  const double d = m.m0 - m.m1[2];
  const double l2 = (m.m0 + m.m1[2]) / d - std::norm(x0.z());
  if (!(l2 > 0.0)) {
    throw InvariantViolation("lambda0_closed_form: numerator " + std::to_string(l2) +
                             " is not positive; quadrature is broken");
  }
  return std::sqrt(l2);
}

ConformalMap normalizing_map(const PlanePoint& x0, double lambda) {
  return compose(translation(x0), dilation(lambda));
}

double com_height(const HarmonicField& u, const PlanePoint& x0, double lambda,
                  const QuadraturePolicy& policy) {
  return transformed_com(u, normalizing_map(x0, lambda), policy)[2];
}

BisectionResult lambda0_bisect(const HarmonicField& u, const PlanePoint& x0, double start,
                               const QuadraturePolicy& policy, double g_tol) {
  constexpr double lo_cap = 1e-6, hi_cap = 1e6;
  if (x0.is_infinite()) throw std::invalid_argument("lambda0_bisect: x0 must be finite");
  if (!(start >= lo_cap && start <= hi_cap)) {
    throw std::invalid_argument("lambda0_bisect: start outside [1e-6, 1e6]");
  }
  const QuadraturePolicy p = tight(policy);
  BisectionResult out;
  // Nearby lambdas converge on similar grids, so during bisection each ladder
  // starts two steps below the level where the previous one converged.
  int skip = 0;
  ExpSamples samples(u);
  auto ladder = [&](double lambda, int from) {
    ++out.evaluations;
    return pulled_back_ladder(u, samples, normalizing_map(x0, lambda), p, from);
  };
  auto g = [&](double lambda) {
    const AdaptiveResult r = ladder(lambda, skip);
    if (r.converged) skip = std::max(0, r.refinements - 2);
    if (!r.converged) {
      throw ConvergenceError("lambda0_bisect: refinement cap reached (last change " +
                             std::to_string(r.last_change) + ")");
    }
    return r.values[3] / r.values[0];
  };
  // Far from the root only the sign matters, so an unconverged ladder is
  // accepted when its value dominates the last refinement change.
  auto g_sign = [&](double lambda) {
    const AdaptiveResult r = ladder(lambda, 0);
    const double v = r.values[3] / r.values[0];
    if (!r.converged && !(std::abs(v) > 10.0 * r.last_change)) {
      throw ConvergenceError("lambda0_bisect: sign of g undetermined at lambda " +
                             std::to_string(lambda));
    }
    return r.converged ? v : std::copysign(1.0, v);
  };

  double a = start, ga = g_sign(a);
  out.bracket_trace.emplace_back(a, ga);
  if (std::abs(ga) < g_tol) {
    out.lambda = a;
    out.g = ga;
    return out;
  }
  // g decreases from +1 at lambda -> 0 to -1 at lambda -> infinity.
  const double step = ga > 0.0 ? 10.0 : 0.1;
  double b = a, gb = ga;
  while ((gb > 0.0) == (ga > 0.0)) {
    a = b;
    ga = gb;
    b = std::clamp(b * step, lo_cap, hi_cap);
    if (b == a) {
      throw ConvergenceError("lambda0_bisect: no sign change of g within [1e-6, 1e6]");
    }
    gb = g_sign(b);
    out.bracket_trace.emplace_back(b, gb);
    if (std::abs(gb) < g_tol) {
      out.lambda = b;
      out.g = gb;
      return out;
    }
  }
  double la = std::log(a), lb = std::log(b);
  for (int it = 0; it < 200; ++it) {
    const double lm = 0.5 * (la + lb);
    const double gm = g(std::exp(lm));
    out.lambda = std::exp(lm);
    out.g = gm;
    if (std::abs(gm) < g_tol || std::abs(lb - la) < 1e-15) return out;
    if ((gm > 0.0) == (ga > 0.0)) {
      la = lm;
      ga = gm;
    } else {
      lb = lm;
    }
  }
  return out;
}

double solve_lambda0(const HarmonicField& u, const PlanePoint& x0, const QuadraturePolicy& policy) {
  double cf = std::numeric_limits<double>::quiet_NaN();
  try {
    cf = lambda0_closed_form(u, x0, policy);
  } catch (const InvariantViolation&) {
  }
  if (std::isnan(cf)) return lambda0_bisect(u, x0, 1.0, policy).lambda;
  const BisectionResult b = lambda0_bisect(u, x0, cf, policy);
  if (std::abs(b.g) < 1e-12 && !(std::abs(b.lambda - cf) <= 1e-8 * std::max(1.0, cf))) {
    throw InvariantViolation("solve_lambda0: closed form " + std::to_string(cf) +
                             " and bisection " + std::to_string(b.lambda) + " disagree");
  }
  return cf;
}

const char* to_string(NormalizationResult::Method m) {
  switch (m) {
    case NormalizationResult::Method::closed_form:
      return "closed_form";
    case NormalizationResult::Method::root_find:
      return "root_find";
    case NormalizationResult::Method::hybrid:
      return "hybrid";
  }
  return "unknown";
}

NormalizationResult normalize(const HarmonicField& u, const QuadraturePolicy& policy,
                              double residual_tol) {
  const QuadraturePolicy p = tight(policy);
  NormalizationResult r;
  r.x0 = solve_x0(u, p);
  try {
    r.lambda_closed_form = lambda0_closed_form(u, r.x0, p);
  } catch (const InvariantViolation&) {
  }
  const bool have_cf = !std::isnan(r.lambda_closed_form);
  double cf_residual = std::numeric_limits<double>::infinity();
  if (have_cf) {
    r.lambda0 = r.lambda_closed_form;
    r.tau = normalizing_map(r.x0, r.lambda0);
    cf_residual = norm(transformed_com(u, r.tau, p));
    r.method = NormalizationResult::Method::closed_form;
    r.residual_com_norm = cf_residual;
  }
  const BisectionResult b = lambda0_bisect(u, r.x0, 1.0, p);
  r.lambda_root_find = b.lambda;
  if (!have_cf || cf_residual >= residual_tol) {
    const ConformalMap tau = normalizing_map(r.x0, b.lambda);
    const double res = norm(transformed_com(u, tau, p));
    if (!(res >= cf_residual)) {
      r.lambda0 = b.lambda;
      r.tau = tau;
      r.residual_com_norm = res;
      r.method = have_cf ? NormalizationResult::Method::hybrid : NormalizationResult::Method::root_find;
    }
  }
  if (!(r.residual_com_norm < residual_tol)) {
    throw InvariantViolation("normalize: center of mass residual " +
                             std::to_string(r.residual_com_norm) + " above tolerance");
  }
  return r;
}

}  // namespace onofri
