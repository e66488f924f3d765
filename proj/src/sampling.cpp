#include "onofri/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace onofri {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

int Rng::below(int n) {
  if (n <= 0) throw std::invalid_argument("Rng::below: n must be positive");
  return std::min(n - 1, static_cast<int>(uniform() * n));
}

Point3 random_point(Rng& rng) {
  for (;;) {
    const double x = rng.normal(), y = rng.normal(), z = rng.normal();
    if (x * x + y * y + z * z > 1e-8) return {x, y, z};
  }
}

Complex random_disk(Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double a = 2.0 * std::numbers::pi * rng.uniform();
  return std::polar(r, a);
}

HarmonicField random_field(Rng& rng, int l_max, double scale) {
  HarmonicField f(l_max);
  for (int l = 0; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) f.coeff(l, m) = scale * rng.normal() / (l + 1.0);
  }
  return f;
}

Generator random_generator(Rng& rng, const BoundedFamily& family) {
  const int kinds = family.allow_inversion ? 4 : 3;
  switch (rng.below(kinds)) {
    case 0:
      return Generator::make_dilation(
          std::exp(rng.uniform(-family.log_lambda_max, family.log_lambda_max)));
    case 1:
      return Generator::make_translation(
          stereo_inverse(PlanePoint::at(random_disk(rng, family.beta_max))));
    case 2:
      return Generator::make_rotation(random_point(rng),
                                      rng.uniform(0.0, 2.0 * std::numbers::pi));
    default:
      return Generator::make_inversion();
  }
}

ConformalMap random_bounded_map(Rng& rng, const BoundedFamily& family) {
  std::vector<Generator> factors;
  return random_bounded_map(rng, family, factors);
}

ConformalMap random_bounded_map(Rng& rng, const BoundedFamily& family,
                                std::vector<Generator>& factors) {
  if (family.max_generators < 1 || !(family.mass_cap >= 1.0)) {
    throw std::invalid_argument("random_bounded_map: invalid family");
  }
  for (int attempt = 0; attempt < 100000; ++attempt) {
    factors.clear();
    const int n = 1 + rng.below(family.max_generators);
    ConformalMap t = identity_map();
    for (int k = 0; k < n; ++k) {
      factors.push_back(random_generator(rng, family));
      t = compose(factors.back().map(), t);
    }
    if (0.5 * t.mobius.frobenius2() <= family.mass_cap) return t;
  }
  throw std::runtime_error("random_bounded_map: mass cap rejects every sample");
}

MobiusMap random_mobius(Rng& rng, double bound) {
  for (;;) {
    const Complex a = random_disk(rng, bound), b = random_disk(rng, bound);
    const Complex c = random_disk(rng, bound), d = random_disk(rng, bound);
    if (std::abs(a * d - b * c) < 0.1) continue;
    const MobiusMap m(a, b, c, d);
    bool ok = true;
    for (const Complex& e : m.entries()) ok = ok && std::abs(e) <= bound;
    if (ok) return m;
  }
}

}  // namespace onofri
