#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace onofri {

using Complex = std::complex<double>;

/// A point on the unit sphere S^2. Construction renormalizes to unit length.
class Point3 {
 public:
  Point3(double w1, double w2, double w3);

  double w1() const { return w_[0]; }
  double w2() const { return w_[1]; }
  double w3() const { return w_[2]; }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::array<double, 3>& array() const { return w_; }

  double dot(const Point3& other) const;
  double dot(const std::array<double, 3>& v) const;

 private:
  std::array<double, 3> w_;
};

Point3 north_pole();
Point3 south_pole();

/// A point of the extended plane C u {infinity}. Infinity is a tagged value,
/// never a large float.
class PlanePoint {
 public:
  static PlanePoint at(Complex z) { return PlanePoint(z, false); }
  static PlanePoint at(double x1, double x2) { return PlanePoint({x1, x2}, false); }
  static PlanePoint infinity() { return PlanePoint({0.0, 0.0}, true); }

  bool is_infinite() const { return infinite_; }
  /// Throws std::domain_error for the point at infinity.
  Complex z() const;
  double x1() const { return z().real(); }
  double x2() const { return z().imag(); }

 private:
  PlanePoint(Complex z, bool infinite) : z_(z), infinite_(infinite) {}
  Complex z_;
  bool infinite_;
};

/// Stereographic projection from the north pole.
PlanePoint stereo_project(const Point3& w);
Point3 stereo_inverse(const PlanePoint& x);

/// Homogeneous coordinates (p : q) with p/q = stereo_project(w). The
/// representative is chosen chart-wise: (w1 + i w2, 1 - w3) on the southern
/// hemisphere and (1 + w3, w1 - i w2) on the northern one, so both entries stay
/// O(1) everywhere.
std::array<Complex, 2> homogeneous_of(const Point3& w);
/// Inverse of homogeneous_of for any nonzero pair.
Point3 point_from_homogeneous(Complex p, Complex q);

struct GridDescriptor {
  int theta_count = 0;
  int phi_count = 0;
  int band_limit_exact = 0;

  bool operator==(const GridDescriptor&) const = default;
};

/// Gauss-Legendre nodes in cos(theta) crossed with a uniform azimuthal grid.
/// Weights realize the normalized measure (they sum to one). Nodes are stored
/// ring by ring: index = ring * phi_count + j.
class SphericalGrid {
 public:
  /// ceil(oversample * (target_band + 1)) rings and 2 * rings azimuthal points.
  static SphericalGrid build(int target_band, double oversample = 1.0);
  static SphericalGrid from_counts(int theta_count, int phi_count);
  static SphericalGrid from_descriptor(const GridDescriptor& descriptor);

  /// Next grid of the refinement ladder: rings scaled by `growth`, phi matched.
  SphericalGrid refined(double growth) const;

  std::size_t size() const { return nodes_.size(); }
  int theta_count() const { return static_cast<int>(cos_theta_.size()); }
  int phi_count() const { return static_cast<int>(phi_.size()); }
  /// Largest L such that every spherical harmonic of degree <= L is
  /// integrated exactly.
  int band_limit_exact() const;
  GridDescriptor descriptor() const;

  const std::vector<Point3>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& cos_theta() const { return cos_theta_; }
  const std::vector<double>& sin_theta() const { return sin_theta_; }
  /// Ring weights; the node weight is ring_weight / phi_count.
  const std::vector<double>& ring_weights() const { return ring_weights_; }
  const std::vector<double>& phi() const { return phi_; }

 private:
  SphericalGrid() = default;

  std::vector<double> cos_theta_;
  std::vector<double> sin_theta_;
  std::vector<double> ring_weights_;
  std::vector<double> phi_;
  std::vector<Point3> nodes_;
  std::vector<double> weights_;
};

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Pairwise (cascade) summation; fixed reduction order for a given length.
double pairwise_sum(std::span<const double> values);

/// Integral against the normalized measure d(omega) = d(sigma) / 4 pi.
double integrate(const SphericalGrid& grid, std::span<const double> samples);

/// Un-normalized area of a geodesic cap of radius r: 2 pi (1 - cos r).
double cap_area(double r);

}  // namespace onofri
