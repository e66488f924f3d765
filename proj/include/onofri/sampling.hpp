#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "onofri/harmonics.hpp"
#include "onofri/mobius.hpp"

namespace onofri {

/// Seeded generator with a fixed, platform-independent mapping from engine
/// output to uniforms and normals, so seeded runs reproduce exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller).
  double normal();
  /// Uniform integer in [0, n).
  int below(int n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Uniform point on S^2.
Point3 random_point(Rng& rng);
/// Uniform point in the disk |z| <= radius.
Complex random_disk(Rng& rng, double radius);

/// Random band-limited field: c_00 ~ scale N(0,1), c_lm ~ scale N(0,1) / (l+1)
/// for l >= 1.
HarmonicField random_field(Rng& rng, int l_max, double scale);

/// Family of short random compositions of conformal generators.
struct BoundedFamily {
  int max_generators = 3;
  double log_lambda_max = 0.6931471805599453;  // dilations in [1/2, 2]
  double beta_max = 1.0;                       // translations with |beta| <= 1
  bool allow_inversion = true;
  /// Accept only compositions with mass ||A||_F^2 / 2 at most this.
  double mass_cap = 2.125;
};

Generator random_generator(Rng& rng, const BoundedFamily& family);
/// A composition of 1..max_generators random generators within the mass cap.
ConformalMap random_bounded_map(Rng& rng, const BoundedFamily& family = {});
/// Same, also returning the factors; factors[0] acts first.
ConformalMap random_bounded_map(Rng& rng, const BoundedFamily& family,
                                std::vector<Generator>& factors);

/// Unimodular matrix whose normalized entries all have modulus <= bound.
MobiusMap random_mobius(Rng& rng, double bound = 2.0);

}  // namespace onofri
