#include "onofri/lorentz.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace onofri {

double quadratic_form(const MinkowskiVec& v) {
  return v.t * v.t - v.q1 * v.q1 - v.q2 * v.q2 - v.q3 * v.q3;
}

Hermitian2 hermitian_of(const MinkowskiVec& v) {
  return {v.t + v.q3, v.t - v.q3, Complex(v.q1, v.q2)};
}

MinkowskiVec minkowski_of(const Hermitian2& h) {
  return {0.5 * (h.h11 + h.h22), h.h12.real(), h.h12.imag(), 0.5 * (h.h11 - h.h22)};
}

Hermitian2 conjugate(const MobiusMap& a, const Hermitian2& h) {
  // (A H)
  const Complex x11 = a.a() * h.h11 + a.b() * h.h21();
  const Complex x12 = a.a() * h.h12 + a.b() * h.h22;
  const Complex x21 = a.c() * h.h11 + a.d() * h.h21();
  const Complex x22 = a.c() * h.h12 + a.d() * h.h22;
  // (A H) A^*
  const Complex y11 = x11 * std::conj(a.a()) + x12 * std::conj(a.b());
  const Complex y12 = x11 * std::conj(a.c()) + x12 * std::conj(a.d());
  const Complex y22 = x21 * std::conj(a.c()) + x22 * std::conj(a.d());
  return {y11.real(), y22.real(), y12};
}

LorentzMatrix::LorentzMatrix() : m_{} {
  for (int i = 0; i < 4; ++i) m_[5 * i] = 1.0;
}

MinkowskiVec LorentzMatrix::apply(const MinkowskiVec& v) const {
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return {out[0], out[1], out[2], out[3]};
}

double LorentzMatrix::metric_residual() const {
  static constexpr std::array<double, 4> eta{1.0, -1.0, -1.0, -1.0};
  double r = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += (*this)(k, i) * eta[k] * (*this)(k, j);
      r = std::max(r, std::abs(s - (i == j ? eta[i] : 0.0)));
    }
  }
  return r;
}

double LorentzMatrix::det() const {
  const Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>> m(m_.data());
  return m.determinant();
}

LorentzMatrix operator*(const LorentzMatrix& x, const LorentzMatrix& y) {
  LorentzMatrix out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += x(i, k) * y(k, j);
      out(i, j) = s;
    }
  }
  return out;
}

double max_abs_diff(const LorentzMatrix& x, const LorentzMatrix& y) {
  double r = 0.0;
  for (int k = 0; k < 16; ++k) r = std::max(r, std::abs(x.row_major()[k] - y.row_major()[k]));
  return r;
}

LorentzMatrix lorentz_lift(const MobiusMap& a) {
  static const std::array<MinkowskiVec, 4> basis{
      MinkowskiVec{1, 0, 0, 1}, MinkowskiVec{1, 0, 0, -1}, MinkowskiVec{0, 1, 1, 0},
      MinkowskiVec{0, 1, -1, 0}};
  std::array<MinkowskiVec, 4> img;
  for (int k = 0; k < 4; ++k) img[k] = minkowski_of(conjugate(a, hermitian_of(basis[k])));

  // e0 = (b1 + b2)/2, e3 = (b1 - b2)/2, e1 = (b3 + b4)/2, e2 = (b3 - b4)/2.
  auto half_sum = [](const MinkowskiVec& x, const MinkowskiVec& y, double sign) {
    return MinkowskiVec{0.5 * (x.t + sign * y.t), 0.5 * (x.q1 + sign * y.q1),
                        0.5 * (x.q2 + sign * y.q2), 0.5 * (x.q3 + sign * y.q3)};
  };
  const std::array<MinkowskiVec, 4> cols{half_sum(img[0], img[1], 1.0),
                                         half_sum(img[2], img[3], 1.0),
                                         half_sum(img[2], img[3], -1.0),
                                         half_sum(img[0], img[1], -1.0)};
  LorentzMatrix out;
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) out(i, j) = cols[j][i];
  }
  return out;
}

double homomorphism_check(const MobiusMap& a, const MobiusMap& b) {
  return max_abs_diff(lorentz_lift(a * b), lorentz_lift(a) * lorentz_lift(b));
}

double lightcone_identity_residual(const ConformalMap& t, const Point3& w) {
  if (t.reflect) {
    throw std::invalid_argument(
        "lightcone_identity_residual: orientation-reversing maps have no Lorentz lift");
  }
  const Point3 img = apply(t, w);
  const double s = std::sqrt(jacobian(t, w));
  const MinkowskiVec rhs = lorentz_lift(t.mobius).apply({1.0, w.w1(), w.w2(), w.w3()});
  const std::array<double, 4> lhs{1.0, img.w1(), img.w2(), img.w3()};
  double r2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double d = lhs[i] - s * rhs[i];
    r2 += d * d;
  }
  return std::sqrt(r2);
}

}  // namespace onofri
