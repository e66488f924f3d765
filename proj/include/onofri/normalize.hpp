#pragma once

#include <limits>

#include "onofri/functionals.hpp"

namespace onofri {

/// int w e^{2u} / int e^{2u}. Throws ConvergenceError.
Vec3 com_of_exp(const HarmonicField& u, const QuadraturePolicy& policy = {});

/// Normalized center of mass of e^{2 u_tau}, u_tau = u o tau + psi_tau, from
/// direct samples of u_tau on the refinement ladder (no projection).
/// Throws ConvergenceError.
Vec3 transformed_com(const HarmonicField& u, const ConformalMap& tau,
                     const QuadraturePolicy& policy = {});

/// Plane translation x0 = int x e^{2u o S^-1} (1+|x|^2)^-3 dx / int e^{2u o S^-1} (1+|x|^2)^-3 dx,
/// evaluated on the sphere, where (1+|x|^2)^-3 dx = pi (1 - w3) / 2 dw and
/// x (1+|x|^2)^-3 dx = pi (w1, w2) / 2 dw.
PlanePoint solve_x0(const HarmonicField& u, const QuadraturePolicy& policy = {});

/// lambda0^2 = [int (1+w3)/2 e^{2u} D - |int (w1,w2)/2 e^{2u}|^2] / D^2 with
/// D = int (1-w3)/2 e^{2u}, i.e. (m0 + m3) / (m0 - m3) - |x0|^2 in terms of
/// the exponential moments. Throws InvariantViolation if it is not positive.
double lambda0_closed_form(const HarmonicField& u, const PlanePoint& x0,
                           const QuadraturePolicy& policy = {});

/// The map z -> lambda z + x0, i.e. compose(translation(x0), dilation(lambda)).
ConformalMap normalizing_map(const PlanePoint& x0, double lambda);

/// Third component of the center of mass of e^{2 u_tau} for tau = normalizing_map(x0, lambda).
double com_height(const HarmonicField& u, const PlanePoint& x0, double lambda,
                  const QuadraturePolicy& policy = {});

struct BisectionResult {
  double lambda = 1.0;
  double g = 0.0;
  int evaluations = 0;
  /// Bracket end points visited while expanding, with their g values.
  std::vector<std::pair<double, double>> bracket_trace;
};

/// Root of com_height in lambda: geometric bracket expansion (factor 10)
/// from `start` within [1e-6, 1e6], then bisection in log lambda until
/// |g| < g_tol. Throws ConvergenceError when no bracket is found.
BisectionResult lambda0_bisect(const HarmonicField& u, const PlanePoint& x0, double start = 1.0,
                               const QuadraturePolicy& policy = {}, double g_tol = 1e-12);

/// Closed form first, bisection as fallback. When both succeed they must agree
/// within 1e-8 (InvariantViolation otherwise).
double solve_lambda0(const HarmonicField& u, const PlanePoint& x0,
                     const QuadraturePolicy& policy = {});

struct NormalizationResult {
  enum class Method { closed_form, root_find, hybrid };

  PlanePoint x0 = PlanePoint::at(0.0, 0.0);
  double lambda0 = 1.0;
  ConformalMap tau;
  double residual_com_norm = 0.0;
  Method method = Method::closed_form;
  double lambda_closed_form = std::numeric_limits<double>::quiet_NaN();
  double lambda_root_find = std::numeric_limits<double>::quiet_NaN();
};

const char* to_string(NormalizationResult::Method m);

/// Finds tau(w) = S^-1(lambda0 S(w) + x0) with int w e^{2 u_tau} = 0. Throws
/// InvariantViolation when the residual stays above residual_tol.
NormalizationResult normalize(const HarmonicField& u, const QuadraturePolicy& policy = {},
                              double residual_tol = 1e-10);

}  // namespace onofri
