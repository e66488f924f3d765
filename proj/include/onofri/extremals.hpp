#pragma once

#include <array>
#include <stdexcept>

#include "onofri/harmonics.hpp"
#include "onofri/mobius.hpp"
#include "onofri/quadrature.hpp"

namespace onofri {

using Vec3 = std::array<double, 3>;

/// Raised when a computed object fails one of its defining identities by more
/// than the stated tolerance.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature of J^{3/2} and w J^{3/2} under the refinement policy.
struct MassMoments {
  double mass = 1.0;
  Vec3 com{};
  AdaptiveResult quadrature;
};

MassMoments mass_moments(const ConformalMap& tau, const SphericalGrid& start,
                         const QuadraturePolicy& policy = {});

/// M = int J^{3/2}. Throws ConvergenceError when the ladder hits its cap.
double mass_numeric(const ConformalMap& tau, const SphericalGrid& start,
                    const QuadraturePolicy& policy = {});
/// a = int w J^{3/2} / M.
Vec3 com_numeric(const ConformalMap& tau, const SphericalGrid& start,
                 const QuadraturePolicy& policy = {});

/// Closed forms for single generators.
double mass_closed_form(const Generator& g);
Vec3 com_closed_form(const Generator& g);

/// Mass of any map from its matrix: ||A||_F^2 / 2.
double frobenius_mass(const ConformalMap& tau);

/// A conformal map with its cached mass, center of mass and normalizer; it
/// generates psi = (3/4) ln J + c, which has int e^{2 psi} = 1.
struct Extremal {
  ConformalMap tau;
  double mass = 1.0;
  Vec3 com{};
  double normalizer = 0.0;
  GridDescriptor grid_used;

  double psi(const Point3& w) const;
};

/// Builds the extremal by quadrature and checks mass >= 1, |a| < 1 and
/// e^{4c} = 1 - |a|^2. Throws InvariantViolation or ConvergenceError.
Extremal build_extremal(const ConformalMap& tau, const SphericalGrid& start,
                        const QuadraturePolicy& policy = {});
/// Same, with the quadrature ladder started from the policy's default grid.
Extremal build_extremal(const ConformalMap& tau, const QuadraturePolicy& policy = {});

/// Extremal from exact matrix formulas: M = ||A||_F^2 / 2 and a read off the
/// first row of the Lorentz lift (a_i = -L_0i / L_00).
Extremal closed_form_extremal(const ConformalMap& tau);

/// A spectral projection together with the L2 norm of what it dropped.
struct ProjectedField {
  HarmonicField field;
  double tail = 0.0;
  GridDescriptor grid;
};

/// Projects grid samples onto degrees <= l_max and measures the residual
/// ||g - P g|| with the grid's own quadrature.
ProjectedField project(const GridField& samples, int l_max);

/// Projection of psi. Throws ConvergenceError when the tail exceeds
/// tail_threshold, std::invalid_argument when the grid cannot resolve l_max.
ProjectedField psi_field(const Extremal& e, int l_max, const SphericalGrid& grid,
                         double tail_threshold = QuadraturePolicy{}.tail_threshold);

/// max over nodes of |J^{1/2} - (1 - |a|^2) / (1 - a.w) M|.
double tauhalf_residual(const Extremal& e, const SphericalGrid& grid);

/// sup over nodes of |(2/3) Lap psi + (1 - a.w) / (1 - |a|^2) e^{2 psi} - 1|
/// with psi replaced by its projection at l_max.
double el_residual(const Extremal& e, int l_max, const SphericalGrid& grid);

}  // namespace onofri
