#include "onofri/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace onofri {

namespace {

std::array<Complex, 4> normalized(std::array<Complex, 4> m) {
  const Complex det = m[0] * m[3] - m[1] * m[2];
  if (!(std::abs(det) > 0.0) || !std::isfinite(std::abs(det))) {
    throw std::invalid_argument("MobiusMap: singular or non-finite matrix");
  }
  const Complex s = std::sqrt(det);
  for (Complex& e : m) e /= s;
  for (const Complex& e : m) {
    if (e == Complex(0.0, 0.0)) continue;
    const bool flip = e.real() < 0.0 || (e.real() == 0.0 && e.imag() < 0.0);
    if (flip) {
      for (Complex& f : m) f = -f;
    }
    break;
  }
  return m;
}

}  // namespace

MobiusMap::MobiusMap() : m_{Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0)} {}

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d) : m_(normalized({a, b, c, d})) {}

MobiusMap MobiusMap::conj() const {
  return {std::conj(m_[0]), std::conj(m_[1]), std::conj(m_[2]), std::conj(m_[3])};
}

MobiusMap MobiusMap::inverse() const { return {m_[3], -m_[1], -m_[2], m_[0]}; }

double MobiusMap::frobenius2() const {
  double s = 0.0;
  for (const Complex& e : m_) s += std::norm(e);
  return s;
}

MobiusMap operator*(const MobiusMap& x, const MobiusMap& y) {
  return {x.a() * y.a() + x.b() * y.c(), x.a() * y.b() + x.b() * y.d(),
          x.c() * y.a() + x.d() * y.c(), x.c() * y.b() + x.d() * y.d()};
}

double projective_distance(const MobiusMap& x, const MobiusMap& y) {
  double plus = 0.0, minus = 0.0;
  for (int k = 0; k < 4; ++k) {
    plus = std::max(plus, std::abs(x.entries()[k] - y.entries()[k]));
    minus = std::max(minus, std::abs(x.entries()[k] + y.entries()[k]));
  }
  return std::min(plus, minus);
}

ConformalMap identity_map() { return {}; }

ConformalMap dilation(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("dilation: lambda must be positive and finite");
  }
  const double s = std::sqrt(lambda);
  return {MobiusMap(s, 0.0, 0.0, 1.0 / s), false};
}

ConformalMap translation(const PlanePoint& beta) {
  if (beta.is_infinite()) throw std::invalid_argument("translation: beta must be finite");
  return translation(beta.z());
}

ConformalMap translation(Complex beta) {
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    throw std::invalid_argument("translation: beta must be finite");
  }
  return {MobiusMap(1.0, beta, 0.0, 1.0), false};
}

ConformalMap translation_to(const Point3& p) {
  const PlanePoint beta = stereo_project(p);
  if (beta.is_infinite()) {
    throw std::invalid_argument("translation_to: the north pole is not reachable by a translation");
  }
  return translation(beta);
}

ConformalMap rotation(const Point3& axis, double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const Complex i(0.0, 1.0);
  const double n1 = axis.w1(), n2 = axis.w2(), n3 = axis.w3();
  return {MobiusMap(Complex(c, s * n3), i * s * Complex(n1, n2), i * s * Complex(n1, -n2),
                    Complex(c, -s * n3)),
          false};
}

ConformalMap inversion() { return {MobiusMap(0.0, 1.0, 1.0, 0.0), true}; }

ConformalMap compose(const ConformalMap& t1, const ConformalMap& t2) {
  const MobiusMap rhs = t1.reflect ? t2.mobius.conj() : t2.mobius;
  return {t1.mobius * rhs, t1.reflect != t2.reflect};
}

ConformalMap invert(const ConformalMap& t) {
  const MobiusMap inv = t.mobius.inverse();
  return {t.reflect ? inv.conj() : inv, t.reflect};
}

namespace {

std::array<Complex, 2> source_pair(const ConformalMap& t, const Point3& w) {
  auto pq = homogeneous_of(w);
  if (t.reflect) {
    pq[0] = std::conj(pq[0]);
    pq[1] = std::conj(pq[1]);
  }
  return pq;
}

}  // namespace

Point3 apply(const ConformalMap& t, const Point3& w) {
  const auto [p, q] = source_pair(t, w);
  const MobiusMap& m = t.mobius;
  return point_from_homogeneous(m.a() * p + m.b() * q, m.c() * p + m.d() * q);
}

PlanePoint apply(const ConformalMap& t, const PlanePoint& x) {
  const MobiusMap& m = t.mobius;
  if (x.is_infinite()) {
    if (m.c() == Complex(0.0, 0.0)) return PlanePoint::infinity();
    return PlanePoint::at(m.a() / m.c());
  }
  const Complex z = t.reflect ? std::conj(x.z()) : x.z();
  const Complex den = m.c() * z + m.d();
  if (den == Complex(0.0, 0.0)) return PlanePoint::infinity();
  return PlanePoint::at((m.a() * z + m.b()) / den);
}

double jacobian(const ConformalMap& t, const Point3& w) {
  const auto [p, q] = source_pair(t, w);
  const MobiusMap& m = t.mobius;
  const double num = std::norm(p) + std::norm(q);
  const double den = std::norm(m.a() * p + m.b() * q) + std::norm(m.c() * p + m.d() * q);
  const double r = num / den;
  return r * r;
}

double jacobian_chart(const MobiusMap& m, Complex z, bool inverted) {
  // In zeta = 1/z the map reads zeta -> (d zeta + c) / (b zeta + a).
  const Complex aa = inverted ? m.d() : m.a();
  const Complex bb = inverted ? m.c() : m.b();
  const Complex cc = inverted ? m.b() : m.c();
  const Complex dd = inverted ? m.a() : m.d();
  const double r = (1.0 + std::norm(z)) / (std::norm(aa * z + bb) + std::norm(cc * z + dd));
  return r * r;
}

double jacobian_area_oracle(const ConformalMap& t, const Point3& p, double r) {
  if (!(r > 0.0 && r < 0.5)) throw std::invalid_argument("jacobian_area_oracle: need 0 < r < 0.5");

  // Orthonormal frame (e1, e2) of the tangent plane at p.
  const auto& pv = p.array();
  std::array<double, 3> ref = std::abs(pv[2]) < 0.9 ? std::array<double, 3>{0, 0, 1}
                                                     : std::array<double, 3>{1, 0, 0};
  auto cross = [](const std::array<double, 3>& x, const std::array<double, 3>& y) {
    return std::array<double, 3>{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2],
                                 x[0] * y[1] - x[1] * y[0]};
  };
  auto unit = [](std::array<double, 3> v) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (double& c : v) c /= n;
    return v;
  };
  const auto e1 = unit(cross(pv, ref));
  const auto e2 = cross(pv, e1);

  constexpr int kSamples = 256;
  std::vector<std::array<double, 3>> img(kSamples);
  const double cr = std::cos(r), sr = std::sin(r);
  for (int k = 0; k < kSamples; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / kSamples;
    const double cp = std::cos(phi), sp = std::sin(phi);
    Point3 b(cr * pv[0] + sr * (cp * e1[0] + sp * e2[0]), cr * pv[1] + sr * (cp * e1[1] + sp * e2[1]),
             cr * pv[2] + sr * (cp * e1[2] + sp * e2[2]));
    img[k] = apply(t, b).array();
  }

  // Plane normal from three well-spaced samples; offset averaged over all.
  const auto& x0 = img[0];
  const auto& x1 = img[kSamples / 3];
  const auto& x2 = img[2 * kSamples / 3];
  auto n = unit(cross({x1[0] - x0[0], x1[1] - x0[1], x1[2] - x0[2]},
                      {x2[0] - x0[0], x2[1] - x0[1], x2[2] - x0[2]}));
  auto dot = [](const std::array<double, 3>& x, const std::array<double, 3>& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
  };
  double h = 0.0;
  for (const auto& x : img) h += dot(n, x);
  h /= kSamples;
  const auto centre = apply(t, p).array();
  if (dot(n, centre) < h) {
    for (double& c : n) c = -c;
    h = -h;
  }
  // Euclidean radius of the boundary circle, for an accurate angular radius.
  double rho = 0.0;
  for (const auto& x : img) {
    const std::array<double, 3> d{x[0] - h * n[0], x[1] - h * n[1], x[2] - h * n[2]};
    rho += std::sqrt(dot(d, d));
  }
  rho /= kSamples;
  const double image_radius = std::atan2(rho, h);
  return cap_area(image_radius) / cap_area(r);
}

Generator Generator::make_dilation(double lambda) {
  Generator g;
  g.kind = Kind::dilation;
  g.lambda = lambda;
  return g;
}

Generator Generator::make_translation(const Point3& p) {
  Generator g;
  g.kind = Kind::translation;
  g.p = p;
  return g;
}

Generator Generator::make_rotation(const Point3& axis, double angle) {
  Generator g;
  g.kind = Kind::rotation;
  g.axis = axis;
  g.angle = angle;
  return g;
}

Generator Generator::make_inversion() {
  Generator g;
  g.kind = Kind::inversion;
  return g;
}

ConformalMap Generator::map() const {
  switch (kind) {
    case Kind::dilation:
      return dilation(lambda);
    case Kind::translation:
      return translation_to(p);
    case Kind::rotation:
      return rotation(axis, angle);
    case Kind::inversion:
      return inversion();
  }
  throw std::logic_error("Generator: unknown kind");
}

}  // namespace onofri
