#pragma once

#include <array>

#include "onofri/mobius.hpp"

namespace onofri {

/// A vector (t, q1, q2, q3) of Minkowski space R^{1,3}.
struct MinkowskiVec {
  double t = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;

  double operator[](int i) const { return i == 0 ? t : i == 1 ? q1 : i == 2 ? q2 : q3; }
};

/// t^2 - q1^2 - q2^2 - q3^2.
double quadratic_form(const MinkowskiVec& v);

/// The Hermitian matrix [[t + q3, q1 + i q2], [q1 - i q2, t - q3]], stored by
/// its two real diagonal entries and the upper off-diagonal entry.
struct Hermitian2 {
  double h11 = 0.0;
  double h22 = 0.0;
  Complex h12 = 0.0;

  Complex h21() const { return std::conj(h12); }
  double det() const { return h11 * h22 - std::norm(h12); }
};

Hermitian2 hermitian_of(const MinkowskiVec& v);
MinkowskiVec minkowski_of(const Hermitian2& h);
/// A H A^* for a 2x2 complex matrix given by its entries (a, b, c, d).
Hermitian2 conjugate(const MobiusMap& a, const Hermitian2& h);

/// A real 4x4 matrix acting on (t, q1, q2, q3), row-major.
class LorentzMatrix {
 public:
  LorentzMatrix();  // identity
  explicit LorentzMatrix(const std::array<double, 16>& rows) : m_(rows) {}

  double operator()(int i, int j) const { return m_[4 * i + j]; }
  double& operator()(int i, int j) { return m_[4 * i + j]; }
  const std::array<double, 16>& row_major() const { return m_; }

  MinkowskiVec apply(const MinkowskiVec& v) const;
  /// Max-norm of M^T eta M - eta.
  double metric_residual() const;
  double det() const;

  friend LorentzMatrix operator*(const LorentzMatrix& x, const LorentzMatrix& y);

 private:
  std::array<double, 16> m_;
};

/// Max-norm of x - y.
double max_abs_diff(const LorentzMatrix& x, const LorentzMatrix& y);

/// The Lorentz transform L with A H(v) A^* = H(L v). Built column by column
/// from the lightlike basis (1,0,0,1), (1,0,0,-1), (0,1,1,0), (0,1,-1,0) and
/// then changed to the standard basis.
LorentzMatrix lorentz_lift(const MobiusMap& a);

/// Max-norm of lift(AB) - lift(A) lift(B).
double homomorphism_check(const MobiusMap& a, const MobiusMap& b);

/// Euclidean norm of (1, t(w)) - J_t(w)^{1/2} lift(t)(1, w). Throws
/// std::invalid_argument for orientation-reversing maps.
double lightcone_identity_residual(const ConformalMap& t, const Point3& w);

}  // namespace onofri
