#pragma once

#include <array>
#include <optional>

#include "onofri/sphere.hpp"

namespace onofri {

/// A determinant-one complex 2x2 matrix [[a, b], [c, d]] acting on the
/// extended plane by z -> (a z + b) / (c z + d).
///
/// Construction divides by a square root of the determinant and fixes the
/// sign of +/-A: the first nonzero entry in (a, b, c, d) order gets a
/// nonnegative real part (nonnegative imaginary part when the real part is 0).
class MobiusMap {
 public:
  MobiusMap();  // identity
  MobiusMap(Complex a, Complex b, Complex c, Complex d);

  Complex a() const { return m_[0]; }
  Complex b() const { return m_[1]; }
  Complex c() const { return m_[2]; }
  Complex d() const { return m_[3]; }
  const std::array<Complex, 4>& entries() const { return m_; }

  Complex det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  MobiusMap conj() const;
  MobiusMap inverse() const;
  /// Squared Frobenius norm |a|^2 + |b|^2 + |c|^2 + |d|^2.
  double frobenius2() const;

  friend MobiusMap operator*(const MobiusMap& x, const MobiusMap& y);

 private:
  std::array<Complex, 4> m_;
};

/// Max-norm distance between two matrices, taking the smaller of the
/// distances to +B and -B.
double projective_distance(const MobiusMap& x, const MobiusMap& y);

/// A conformal self-map of S^2: the Mobius action, pre-composed with complex
/// conjugation when `reflect` is set (orientation-reversing maps).
struct ConformalMap {
  MobiusMap mobius;
  bool reflect = false;
};

ConformalMap identity_map();
/// z -> lambda z. Throws std::invalid_argument for lambda <= 0.
ConformalMap dilation(double lambda);
/// z -> z + beta. Throws std::invalid_argument for the point at infinity.
ConformalMap translation(const PlanePoint& beta);
ConformalMap translation(Complex beta);
/// The translation taking the south pole to p. p must not be the north pole.
ConformalMap translation_to(const Point3& p);
/// Rotation of S^2 about `axis` by `angle` (right-hand rule), as an SU(2) element.
ConformalMap rotation(const Point3& axis, double angle);
/// The geometric inversion x -> x / |x|^2, i.e. z -> 1 / conj(z).
ConformalMap inversion();

/// t1 o t2: apply t2 first.
ConformalMap compose(const ConformalMap& t1, const ConformalMap& t2);
ConformalMap invert(const ConformalMap& t);

/// The image point, evaluated in homogeneous coordinates so that the pole of
/// the map and the point at infinity need no special handling.
Point3 apply(const ConformalMap& t, const Point3& w);
/// Plane action including the point at infinity.
PlanePoint apply(const ConformalMap& t, const PlanePoint& x);

/// Area-distortion factor J_t(w) for the round metric:
/// ((1 + |z|^2) / (|a z + b|^2 + |c z + d|^2))^2, evaluated from chart-wise
/// homogeneous coordinates so it stays accurate near the north pole. For an
/// orientation-reversing map the formula is taken at the conjugated point.
double jacobian(const ConformalMap& t, const Point3& w);

/// Same formula evaluated in the plane chart z, or in the inverted chart
/// zeta = 1 / z when `inverted` is set. Exposed for chart-agreement tests.
double jacobian_chart(const MobiusMap& m, Complex z, bool inverted);

/// Ratio sigma(t(B(p, r))) / sigma(B(p, r)) from the plane of the image
/// boundary circle, fitted to a dense sample of the boundary. Requires
/// 0 < r < 0.5.
double jacobian_area_oracle(const ConformalMap& t, const Point3& p, double r);

/// A single conformal generator, with enough data for closed-form mass and
/// center of mass.
struct Generator {
  enum class Kind { dilation, translation, rotation, inversion };
  Kind kind = Kind::dilation;
  double lambda = 1.0;            // dilation
  Point3 p = south_pole();        // translation target
  Point3 axis = north_pole();     // rotation axis
  double angle = 0.0;             // rotation angle

  static Generator make_dilation(double lambda);
  static Generator make_translation(const Point3& p);
  static Generator make_rotation(const Point3& axis, double angle);
  static Generator make_inversion();

  ConformalMap map() const;
};

}  // namespace onofri
