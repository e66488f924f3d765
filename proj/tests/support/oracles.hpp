#pragma once

// Test-side reference computations. Nothing here calls into the library's
// quadrature or transform code, so agreement is a real cross-check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Vec3 = std::array<double, 3>;
constexpr double kPi = std::numbers::pi;

inline Vec3 sph(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Fejer's first rule on [-1, 1]: nodes cos((2k-1) pi / 2n).
struct Fejer {
  std::vector<double> theta, w;
  explicit Fejer(int n) {
    theta.resize(n);
    w.resize(n);
    for (int k = 0; k < n; ++k) {
      const double t = (2.0 * k + 1.0) * kPi / (2.0 * n);
      double s = 0.0;
      for (int j = 1; j <= n / 2; ++j) s += std::cos(2.0 * j * t) / (4.0 * j * j - 1.0);
      theta[k] = t;
      w[k] = 2.0 / n * (1.0 - 2.0 * s);
    }
  }
};

/// Product-rule average over S^2 (normalized measure) of f(theta, phi):
/// Fejer in cos(theta) times the trapezoid rule in phi.
inline double sphere_mean(const std::function<double(double, double)>& f, int n_theta,
                          int n_phi) {
  const Fejer fj(n_theta);
  double total = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    double ring = 0.0;
    for (int j = 0; j < n_phi; ++j) ring += f(fj.theta[i], 2.0 * kPi * j / n_phi);
    total += fj.w[i] * ring / n_phi;
  }
  return 0.5 * total;
}

/// Real harmonic normalized for the normalized measure, from the standard
/// library's associated Legendre functions (no Condon-Shortley phase).
inline double ylm(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  const double logratio = std::lgamma(l - am + 1.0) - std::lgamma(l + am + 1.0);
  const double norm = std::sqrt((2.0 * l + 1.0) * std::exp(logratio));
  const double p = norm * std::assoc_legendre(l, am, std::cos(theta));
  if (m == 0) return p;
  return std::numbers::sqrt2 * p * (m > 0 ? std::cos(am * phi) : std::sin(am * phi));
}

/// Evaluation of a coefficient vector in (l, m) order.
inline double field_value(const std::vector<double>& c, int l_max, double theta, double phi) {
  double s = 0.0;
  for (int l = 0; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) s += c[l * l + l + m] * ylm(l, m, theta, phi);
  }
  return s;
}

/// Dirichlet energy by central finite differences of the tangential gradient.
inline double fd_dirichlet_energy(const std::vector<double>& c, int l_max, int n_theta,
                                  int n_phi, double h = 1e-5) {
  auto g = [&](double t, double p) {
    const double dt = (field_value(c, l_max, t + h, p) - field_value(c, l_max, t - h, p)) / (2 * h);
    const double dp = (field_value(c, l_max, t, p + h) - field_value(c, l_max, t, p - h)) / (2 * h);
    const double s = std::sin(t);
    return dt * dt + dp * dp / (s * s);
  };
  return sphere_mean(g, n_theta, n_phi);
}

/// Coefficients of psi = -(3/2) ln(1 - a.w) + ln(1 - |a|^2), the extremal with
/// center of mass a. The function is zonal about a/|a|, so by the addition
/// theorem c_lm = h_l Y_lm(a/|a|) with h_l = (1/2) int_{-1}^{1} g(x) P_l(x) dx,
/// computed here by a high-order Fejer rule in one variable.
inline std::vector<double> psi_coefficients(const Vec3& a, int l_max, int nodes = 800) {
  std::vector<double> c((l_max + 1) * (l_max + 1), 0.0);
  const double r = std::sqrt(dot(a, a));
  if (r == 0.0) return c;
  const Fejer fj(nodes);
  std::vector<double> h(l_max + 1, 0.0);
  for (int k = 0; k < nodes; ++k) {
    const double x = std::cos(fj.theta[k]);
    const double g = -1.5 * std::log1p(-r * x) + std::log1p(-r * r);
    for (int l = 0; l <= l_max; ++l) h[l] += 0.5 * fj.w[k] * g * std::legendre(l, x);
  }
  const double theta = std::acos(std::clamp(a[2] / r, -1.0, 1.0));
  const double phi = std::atan2(a[1], a[0]);
  for (int l = 0; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) c[l * l + l + m] = h[l] * ylm(l, m, theta, phi);
  }
  return c;
}

/// Rodrigues rotation of v about unit axis n by angle t.
inline Vec3 rodrigues(const Vec3& n, double t, const Vec3& v) {
  const double c = std::cos(t), s = std::sin(t);
  const Vec3 x{n[1] * v[2] - n[2] * v[1], n[2] * v[0] - n[0] * v[2], n[0] * v[1] - n[1] * v[0]};
  const double d = dot(n, v);
  return {v[0] * c + x[0] * s + n[0] * d * (1 - c), v[1] * c + x[1] * s + n[1] * d * (1 - c),
          v[2] * c + x[2] * s + n[2] * d * (1 - c)};
}

/// 2D product Gauss-free quadrature on the disk |x| <= R in polar coordinates:
/// composite Simpson in r, trapezoid in angle.
inline double disk_integral(const std::function<double(double, double)>& f, double radius,
                            int n_r, int n_a) {
  if (n_r % 2) ++n_r;
  const double hr = radius / n_r;
  double total = 0.0;
  for (int i = 0; i <= n_r; ++i) {
    const double r = i * hr;
    const double wr = (i == 0 || i == n_r) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    double ring = 0.0;
    for (int j = 0; j < n_a; ++j) {
      const double a = 2.0 * kPi * j / n_a;
      ring += f(r * std::cos(a), r * std::sin(a));
    }
    total += wr * r * ring * (2.0 * kPi / n_a);
  }
  return total * hr / 3.0;
}

}  // namespace oracle
