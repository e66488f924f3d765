#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "onofri/sphere.hpp"

namespace onofri {

/// A band-limited real function on S^2, stored as coefficients in the real
/// spherical-harmonic basis that is orthonormal for the normalized measure
/// (so Y_00 == 1 and the mean is coefficient (0,0)).
///
/// Basis convention, no Condon-Shortley phase:
///   Y_l0  = Pbar_l0(cos t)
///   Y_lm  = sqrt(2) Pbar_lm(cos t) cos(m phi),   m > 0
///   Y_l-m = sqrt(2) Pbar_lm(cos t) sin(m phi),   m > 0
/// where (1/2) int_{-1}^{1} Pbar_lm^2 = 1. In particular Y_10 = sqrt(3) w3,
/// Y_11 = sqrt(3) w1 and Y_1-1 = sqrt(3) w2.
class HarmonicField {
 public:
  explicit HarmonicField(int l_max = 0);
  HarmonicField(int l_max, std::vector<double> coeffs);

  static std::size_t index(int l, int m) {
    return static_cast<std::size_t>(l * l + l + m);
  }
  static std::size_t size_for(int l_max) {
    return static_cast<std::size_t>((l_max + 1) * (l_max + 1));
  }

  int l_max() const { return l_max_; }
  double coeff(int l, int m) const { return coeffs_[index(l, m)]; }
  double& coeff(int l, int m) { return coeffs_[index(l, m)]; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }

  double mean() const { return coeffs_[0]; }

  /// Zero-padded or truncated copy at another band limit.
  HarmonicField resized(int l_max) const;

  HarmonicField& operator+=(const HarmonicField& other);
  HarmonicField& operator-=(const HarmonicField& other);
  HarmonicField& operator*=(double s);

 private:
  int l_max_;
  std::vector<double> coeffs_;
};

HarmonicField operator+(HarmonicField a, const HarmonicField& b);
HarmonicField operator-(HarmonicField a, const HarmonicField& b);
HarmonicField operator*(double s, HarmonicField a);

/// Samples aligned with the nodes of a grid. The grid must outlive the field.
class GridField {
 public:
  GridField(const SphericalGrid& grid, std::vector<double> samples);

  const SphericalGrid& grid() const { return *grid_; }
  const std::vector<double>& samples() const { return samples_; }
  std::vector<double>& samples() { return samples_; }

 private:
  const SphericalGrid* grid_;
  std::vector<double> samples_;
};

/// Fully normalized associated Legendre values Pbar_lm(x), 0 <= m <= l <= l_max,
/// from the standard upward recursion in l. sin_theta is passed separately so
/// ring values reuse the grid's accurately computed sqrt((1-x)(1+x)).
class LegendreTable {
 public:
  explicit LegendreTable(int l_max);
  void evaluate(double x, double sin_theta);
  double operator()(int l, int m) const { return values_[tri(l, m)]; }
  int l_max() const { return l_max_; }

 private:
  static std::size_t tri(int l, int m) { return static_cast<std::size_t>(l * (l + 1) / 2 + m); }
  int l_max_;
  std::vector<double> a_;  // recursion coefficient sqrt((4l^2-1)/(l^2-m^2))
  std::vector<double> b_;  // ratio a_lm / a_{l-1,m}
  std::vector<double> diag_;  // sqrt((2m+1) / 2m) and sqrt(2m+3)
  std::vector<double> sub_;
  std::vector<double> values_;
};

/// Y_lm at one point.
double real_harmonic(int l, int m, const Point3& w);

/// Pointwise evaluation of the expansion at an arbitrary point.
double evaluate(const HarmonicField& f, const Point3& w);

/// Evaluation at many points.
std::vector<double> evaluate(const HarmonicField& f, std::span<const Point3> points);

/// Requires grid.band_limit_exact() >= f.l_max().
GridField synthesize(const HarmonicField& f, const SphericalGrid& grid);

/// Quadrature projection onto degrees <= l_max. Exact for band-limited input
/// when grid.band_limit_exact() >= 2 * l_max, which is therefore required.
HarmonicField analyze(const GridField& g, int l_max);

/// sum l(l+1) c_lm^2, the Dirichlet energy for the normalized measure.
double dirichlet_energy(const HarmonicField& f);

/// Coefficient-wise multiplication by -l(l+1).
HarmonicField laplacian(const HarmonicField& f);

/// sum over l >= 1 of c_lm^2: squared L2 norm of the non-constant part.
double nonconstant_norm2(const HarmonicField& f);

}  // namespace onofri
