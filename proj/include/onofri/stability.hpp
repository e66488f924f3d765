#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "onofri/normalize.hpp"
#include "onofri/simplex.hpp"

namespace onofri {

/// Chart of the extremal manifold modulo constants: tau = dilation(lambda) o
/// translation(beta), the plane map z -> lambda z + lambda beta, with
/// lambda = exp(log_lambda).
struct ManifoldPoint {
  double log_lambda = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;

  static constexpr double kLogLambdaMax = 2.772588722239781;  // ln 16
  static constexpr double kBetaMax = 8.0;

  ConformalMap tau() const;
  bool in_box() const;
  /// Within `margin` of a face of the search box.
  bool near_boundary(double margin = 1e-4) const;

  /// The chart point with the same psi: the upper-triangular factor of the
  /// QR decomposition of the matrix (of its conjugate for reflections).
  static ManifoldPoint from_map(const ConformalMap& tau);
};

/// int |grad(u - psi_tau(m))|^2 with psi projected at l_max (>= u.l_max()).
/// Throws ConvergenceError when the psi tail exceeds policy.tail_threshold.
double grad_distance(const HarmonicField& u, const ManifoldPoint& m, int l_max,
                     const SphericalGrid& grid, const QuadraturePolicy& policy = {});

struct StabilityOptions {
  std::uint64_t seed = 0;
  int random_starts = 3;
  /// Random starts have lambda in [1/4, 4] and |beta| <= 2.
  double random_log_lambda = 1.3862943611198906;
  double random_beta = 2.0;
  SimplexOptions simplex{};
  QuadraturePolicy policy{};
};

struct StartRecord {
  std::string kind;  // identity, normalization, random
  ManifoldPoint start;
  double start_value = 0.0;
  ManifoldPoint end;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
  bool at_boundary = false;
};

struct DistanceResult {
  double distance = 0.0;
  ManifoldPoint argmin;
  /// The best start converged away from the box boundary.
  bool converged = false;
  /// Every start ended on the box boundary or was infeasible.
  bool all_at_boundary = false;
  std::vector<StartRecord> trace;
};

/// Multi-start Nelder-Mead over (log_lambda, beta1, beta2) from the identity,
/// the inverse of the normalization map and random points. Points outside
/// the box or with an unresolved psi score +inf.
DistanceResult distance_to_manifold(const HarmonicField& u, int l_max, const SphericalGrid& grid,
                                    const StabilityOptions& options = {});

struct StabilityReport {
  double deficit = 0.0;
  double distance = 0.0;
  double slack = 0.0;
  ManifoldPoint argmin;
  bool deficit_converged = false;
  bool distance_converged = false;
  /// Value at the normalization start divided by the final minimum; the
  /// proof's candidate is expected within a factor 6.
  double warm_start_ratio = 0.0;
  int evaluations = 0;
  std::vector<StartRecord> trace;
};

/// deficit = I_{2/3}(u), distance from distance_to_manifold, slack = deficit -
/// distance / 6. Throws InvariantViolation if slack < -1e-8 on a converged run.
StabilityReport stability_check(const HarmonicField& u, int l_max, const SphericalGrid& grid,
                                const StabilityOptions& options = {});

}  // namespace onofri
