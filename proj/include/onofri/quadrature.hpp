#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "onofri/sphere.hpp"

namespace onofri {

/// Raised when a refinement ladder hits its cap without meeting tolerance, or
/// when a projection leaves more tail than the policy allows.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid-refinement policy for integrals that are not band-limited (anything
/// involving exp(2u) or powers of a Jacobian).
struct QuadraturePolicy {
  /// Starting band; negative means "derive from the field's l_max".
  int start_band = -1;
  double oversample = 1.0;
  /// Successive refinements must agree to rel_tol * (scale of the result).
  double rel_tol = 1e-9;
  double growth = 1.5;
  int max_theta = 512;
  /// Largest admissible L2 norm of what a spectral projection drops.
  double tail_threshold = 1e-6;

  SphericalGrid start_grid(int l_max_hint) const;
};

struct AdaptiveResult {
  std::vector<double> values;
  GridDescriptor grid;
  bool converged = false;
  int refinements = 0;
  /// Max-norm change between the last two ladder steps.
  double last_change = 0.0;
};

/// Evaluates `integrals` on the policy ladder starting at `start` until two
/// successive vectors agree within rel_tol * max(1, |v|_inf). Returns the
/// finest values; converged=false when the ring cap is reached first.
AdaptiveResult integrate_adaptive(
    const SphericalGrid& start, const QuadraturePolicy& policy,
    const std::function<std::vector<double>(const SphericalGrid&)>& integrals);

/// Same, with a caller-supplied scale for the relative test.
AdaptiveResult integrate_adaptive(
    const SphericalGrid& start, const QuadraturePolicy& policy,
    const std::function<std::vector<double>(const SphericalGrid&)>& integrals,
    const std::function<double(const std::vector<double>&, const std::vector<double>&)>& change);

}  // namespace onofri
