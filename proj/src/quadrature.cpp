#include "onofri/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace onofri {

SphericalGrid QuadraturePolicy::start_grid(int l_max_hint) const {
  const int band = start_band >= 0 ? start_band : std::max(16, 2 * std::max(0, l_max_hint) + 8);
  return SphericalGrid::build(band, oversample);
}

namespace {

double default_change(const std::vector<double>& prev, const std::vector<double>& next) {
  double diff = 0.0;
  double scale = 1.0;
  for (std::size_t k = 0; k < next.size(); ++k) {
    diff = std::max(diff, std::abs(next[k] - prev[k]));
    scale = std::max(scale, std::abs(next[k]));
  }
  return diff / scale;
}

}  // namespace

AdaptiveResult integrate_adaptive(
    const SphericalGrid& start, const QuadraturePolicy& policy,
    const std::function<std::vector<double>(const SphericalGrid&)>& integrals) {
  return integrate_adaptive(start, policy, integrals, default_change);
}

AdaptiveResult integrate_adaptive(
    const SphericalGrid& start, const QuadraturePolicy& policy,
    const std::function<std::vector<double>(const SphericalGrid&)>& integrals,
    const std::function<double(const std::vector<double>&, const std::vector<double>&)>& change) {
  AdaptiveResult result;
  std::vector<double> prev = integrals(start);
  SphericalGrid grid = start;
  for (;;) {
    if (grid.theta_count() >= policy.max_theta) {
      result.values = std::move(prev);
      result.grid = grid.descriptor();
      result.converged = false;
      return result;
    }
    SphericalGrid next = grid.refined(policy.growth);
    if (next.theta_count() > policy.max_theta) {
      next = SphericalGrid::from_counts(policy.max_theta, 2 * policy.max_theta);
    }
    std::vector<double> values = integrals(next);
    ++result.refinements;
    const double delta = change(prev, values);
    result.last_change = delta;
    prev = std::move(values);
    grid = std::move(next);
    if (delta < policy.rel_tol) {
      result.values = std::move(prev);
      result.grid = grid.descriptor();
      result.converged = true;
      return result;
    }
  }
}

}  // namespace onofri
