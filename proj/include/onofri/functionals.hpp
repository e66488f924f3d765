#pragma once

#include "onofri/extremals.hpp"

namespace onofri {

/// int e^{2(u - s)} and int w e^{2(u - s)} with the shift s = mean(u), so
/// the integrals stay O(1) for large constants.
struct ExpMoments {
  double shift = 0.0;
  double m0 = 1.0;
  Vec3 m1{};
  AdaptiveResult quadrature;

  /// ln int e^{2u}.
  double log_mass() const;
  /// (1/2) ln[(int e^{2u})^2 - sum_i (int w_i e^{2u})^2]; throws
  /// InvariantViolation when the bracket is not positive.
  double half_log_lorentzian() const;
};

ExpMoments exp_moments(const HarmonicField& u, const SphericalGrid& start,
                       const QuadraturePolicy& policy = {});

struct FunctionalReport {
  double alpha = 0.0;
  double energy = 0.0;
  double mean = 0.0;
  double log_mass = 0.0;
  double lorentzian = 0.0;
  double value = 0.0;
  GridDescriptor grid;
  bool converged = false;
};

/// alpha int |grad u|^2 + 2 int u - (1/2) ln[(int e^{2u})^2 - sum (int w_i e^{2u})^2].
/// converged is set when the last refinement moved the value by less than
/// rel_tol (1 + |value|).
FunctionalReport chang_gui_I(double alpha, const HarmonicField& u, const SphericalGrid& start,
                             const QuadraturePolicy& policy = {});
FunctionalReport chang_gui_I(double alpha, const HarmonicField& u,
                             const QuadraturePolicy& policy = {});

/// alpha int |grad u|^2 + 2 int u - ln int e^{2u}. Throws ConvergenceError.
double onofri_J(double alpha, const HarmonicField& u, const SphericalGrid& start,
                const QuadraturePolicy& policy = {});

/// Projection of u o tau + psi_tau onto degrees <= l_max, with its tail.
/// Throws ConvergenceError when the tail exceeds policy.tail_threshold.
ProjectedField transform(const HarmonicField& u, const Extremal& e, int l_max,
                         const SphericalGrid& grid, const QuadraturePolicy& policy = {});
ProjectedField transform(const HarmonicField& u, const ConformalMap& tau, int l_max,
                         const SphericalGrid& grid, const QuadraturePolicy& policy = {});
/// Samples of u o tau + psi_tau at the grid nodes, without projection.
GridField transform_samples(const HarmonicField& u, const Extremal& e, const SphericalGrid& grid);

/// value - (alpha - 2/3) energy for alpha >= 2/3.
double cg_bound_slack(double alpha, const HarmonicField& u, const SphericalGrid& start,
                      const QuadraturePolicy& policy = {});

struct InvarianceCheck {
  double difference = 0.0;
  double tail = 0.0;
};

/// |energy(P(u o tau)) - energy(u)|, with the projection tail reported.
InvarianceCheck dirichlet_invariance_check(const HarmonicField& u, const ConformalMap& tau,
                                           int l_max, const SphericalGrid& grid);

}  // namespace onofri
