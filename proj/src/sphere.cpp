#include "onofri/sphere.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "onofri/parallel.hpp"

namespace onofri {

namespace {
std::atomic<int> g_max_jobs{1};
}  // namespace

void set_max_jobs(int jobs) { g_max_jobs.store(std::max(1, jobs)); }
int max_jobs() { return g_max_jobs.load(); }

Point3::Point3(double w1, double w2, double w3) : w_{w1, w2, w3} {
  const double n2 = w1 * w1 + w2 * w2 + w3 * w3;
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::invalid_argument("Point3: cannot normalize a zero or non-finite vector");
  }
  if (std::abs(n2 - 1.0) > 1e-15) {
    const double n = std::sqrt(n2);
    for (double& c : w_) c /= n;
  }
}

double Point3::dot(const Point3& other) const { return dot(other.w_); }

double Point3::dot(const std::array<double, 3>& v) const {
  return w_[0] * v[0] + w_[1] * v[1] + w_[2] * v[2];
}

Point3 north_pole() { return {0.0, 0.0, 1.0}; }
Point3 south_pole() { return {0.0, 0.0, -1.0}; }

Complex PlanePoint::z() const {
  if (infinite_) throw std::domain_error("PlanePoint: point at infinity has no finite coordinate");
  return z_;
}

PlanePoint stereo_project(const Point3& w) {
  if (w.w3() >= 1.0 - 1e-14) return PlanePoint::infinity();
  // 1 - w3 without cancellation on the northern hemisphere.
  const double r2 = w.w1() * w.w1() + w.w2() * w.w2();
  const double one_minus = w.w3() > 0.0 ? r2 / (1.0 + w.w3()) : 1.0 - w.w3();
  return PlanePoint::at(w.w1() / one_minus, w.w2() / one_minus);
}

Point3 stereo_inverse(const PlanePoint& x) {
  if (x.is_infinite()) return north_pole();
  const Complex z = x.z();
  const double r2 = std::norm(z);
  const double s = 1.0 / (1.0 + r2);
  return {2.0 * z.real() * s, 2.0 * z.imag() * s, (r2 - 1.0) * s};
}

std::array<Complex, 2> homogeneous_of(const Point3& w) {
  if (w.w3() <= 0.0) return {Complex(w.w1(), w.w2()), Complex(1.0 - w.w3(), 0.0)};
  return {Complex(1.0 + w.w3(), 0.0), Complex(w.w1(), -w.w2())};
}

Point3 point_from_homogeneous(Complex p, Complex q) {
  const double pp = std::norm(p);
  const double qq = std::norm(q);
  const double s = pp + qq;
  if (!(s > 0.0)) throw std::invalid_argument("point_from_homogeneous: zero pair");
  const Complex pq = p * std::conj(q);
  return {2.0 * pq.real() / s, 2.0 * pq.imag() / s, (pp - qq) / s};
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = n == 1 ? x : p1;
      double pn1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pn1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pn1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

SphericalGrid SphericalGrid::build(int target_band, double oversample) {
  if (target_band < 0) throw std::invalid_argument("build_grid: target_band must be >= 0");
  if (!(oversample >= 1.0)) throw std::invalid_argument("build_grid: oversample must be >= 1");
  const int rings = static_cast<int>(std::ceil(oversample * (target_band + 1) - 1e-12));
  const int phi = std::max(2 * target_band + 1, 2 * rings);
  return from_counts(rings, phi);
}

SphericalGrid SphericalGrid::from_counts(int theta_count, int phi_count) {
  if (theta_count < 1 || phi_count < 1) {
    throw std::invalid_argument("SphericalGrid: counts must be positive");
  }
  SphericalGrid g;
  std::vector<double> gl_w;
  gauss_legendre(theta_count, g.cos_theta_, gl_w);
  g.sin_theta_.resize(theta_count);
  for (int i = 0; i < theta_count; ++i) {
    const double x = g.cos_theta_[i];
    g.sin_theta_[i] = std::sqrt((1.0 - x) * (1.0 + x));
  }
  const double total = pairwise_sum(gl_w);
  g.ring_weights_.resize(theta_count);
  for (int i = 0; i < theta_count; ++i) g.ring_weights_[i] = gl_w[i] / total;

  g.phi_.resize(phi_count);
  for (int j = 0; j < phi_count; ++j) g.phi_[j] = 2.0 * std::numbers::pi * j / phi_count;

  g.nodes_.reserve(static_cast<std::size_t>(theta_count) * phi_count);
  g.weights_.reserve(g.nodes_.capacity());
  for (int i = 0; i < theta_count; ++i) {
    for (int j = 0; j < phi_count; ++j) {
      const double s = g.sin_theta_[i];
      g.nodes_.emplace_back(s * std::cos(g.phi_[j]), s * std::sin(g.phi_[j]), g.cos_theta_[i]);
      g.weights_.push_back(g.ring_weights_[i] / phi_count);
    }
  }
  return g;
}

SphericalGrid SphericalGrid::from_descriptor(const GridDescriptor& d) {
  SphericalGrid g = from_counts(d.theta_count, d.phi_count);
  if (d.band_limit_exact != 0 && d.band_limit_exact != g.band_limit_exact()) {
    throw std::invalid_argument("SphericalGrid: descriptor band_limit_exact " +
                                std::to_string(d.band_limit_exact) + " inconsistent with counts");
  }
  return g;
}

SphericalGrid SphericalGrid::refined(double growth) const {
  const int rings = std::max(theta_count() + 1,
                             static_cast<int>(std::ceil(growth * theta_count() - 1e-12)));
  return from_counts(rings, 2 * rings);
}

int SphericalGrid::band_limit_exact() const {
  return std::min(2 * theta_count() - 1, phi_count() - 1);
}

GridDescriptor SphericalGrid::descriptor() const {
  return {theta_count(), phi_count(), band_limit_exact()};
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 16;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double integrate(const SphericalGrid& grid, std::span<const double> samples) {
  if (samples.size() != grid.size()) {
    throw std::invalid_argument("integrate: " + std::to_string(samples.size()) +
                                " samples for " + std::to_string(grid.size()) + " nodes");
  }
  std::vector<double> products(samples.size());
  const auto& w = grid.weights();
  for (std::size_t i = 0; i < samples.size(); ++i) products[i] = w[i] * samples[i];
  return pairwise_sum(products);
}

double cap_area(double r) {
  if (!(r >= 0.0 && r <= std::numbers::pi)) {
    throw std::invalid_argument("cap_area: radius must lie in [0, pi]");
  }
  const double h = std::sin(0.5 * r);
  return 4.0 * std::numbers::pi * h * h;
}

}  // namespace onofri
