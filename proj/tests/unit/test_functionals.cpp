#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "onofri/functionals.hpp"
#include "onofri/sampling.hpp"
#include "oracles.hpp"

using namespace onofri;

namespace {

constexpr double kTwoThirds = 2.0 / 3.0;

HarmonicField constant(double c, int l_max = 0) {
  HarmonicField f(l_max);
  f.coeff(0, 0) = c;
  return f;
}

HarmonicField w3_field(double eps) {
  HarmonicField f(1);
  f.coeff(1, 0) = eps / std::sqrt(3.0);
  return f;
}

/// Oracle value of I_alpha by a direct product rule, independent of the
/// library's grids and synthesis.
double oracle_I(double alpha, const HarmonicField& u, int n) {
  std::vector<double> c(u.coeffs().begin(), u.coeffs().end());
  const int L = u.l_max();
  double m[4] = {0, 0, 0, 0};
  for (int k = 0; k < 4; ++k) {
    m[k] = oracle::sphere_mean(
        [&](double t, double p) {
          const double e = std::exp(2.0 * oracle::field_value(c, L, t, p));
          const auto w = oracle::sph(t, p);
          return k == 0 ? e : w[k - 1] * e;
        },
        n, 2 * n);
  }
  double energy = 0.0;
  for (int l = 1; l <= L; ++l) {
    for (int mm = -l; mm <= l; ++mm) energy += l * (l + 1.0) * c[l * l + l + mm] * c[l * l + l + mm];
  }
  return alpha * energy + 2.0 * c[0] - 0.5 * std::log(m[0] * m[0] - m[1] * m[1] - m[2] * m[2] - m[3] * m[3]);
}

}  // namespace

TEST_CASE("onofri functional examples") {
  const SphericalGrid g = SphericalGrid::build(16);
  CHECK(std::abs(onofri_J(1.0, HarmonicField(4), g)) < 1e-15);
  for (double c : {-3.0, 0.7, 12.0}) {
    for (double a : {kTwoThirds, 1.0, 2.0}) CHECK(std::abs(onofri_J(a, constant(c), g)) < 1e-13);
  }
  // (1/2) ln J of a dilation is an Onofri extremal.
  const Extremal d = build_extremal(dilation(2.0));
  const SphericalGrid fine = SphericalGrid::build(72);
  std::vector<double> s(fine.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = 0.5 * std::log(jacobian(d.tau, fine.nodes()[i]));
  const ProjectedField h = project(GridField(fine, s), 32);
  CHECK(h.tail < 1e-6);
  CHECK(std::abs(onofri_J(1.0, h.field, SphericalGrid::build(70))) < 1e-6);
}

TEST_CASE("chang-gui functional examples") {
  const FunctionalReport z = chang_gui_I(kTwoThirds, HarmonicField(3));
  CHECK(z.value == 0.0);
  CHECK(std::abs(z.lorentzian - 1.0) < 1e-15);
  CHECK(z.converged);

  const SphericalGrid g = SphericalGrid::build(72);
  const ProjectedField psi = psi_field(build_extremal(dilation(2.0)), 32, g);
  const FunctionalReport r = chang_gui_I(kTwoThirds, psi.field);
  CHECK(r.converged);
  CHECK(std::abs(r.value) < 1e-8);
  CHECK(r.value == kTwoThirds * r.energy + 2.0 * r.mean - 0.5 * std::log(r.lorentzian));

  const FunctionalReport e = chang_gui_I(kTwoThirds, w3_field(0.1));
  CHECK(e.value >= 0.0);
  CHECK(std::abs(e.energy - 2.0 * 0.01 / 3.0) < 1e-16);
  CHECK(std::abs(e.value - oracle_I(kTwoThirds, w3_field(0.1), 40)) < 1e-13);
}

TEST_CASE("functional agrees with an independent product rule") {
  Rng rng(41);
  for (int k = 0; k < 4; ++k) {
    const HarmonicField u = random_field(rng, 5, 0.4);
    for (double a : {kTwoThirds, 1.5}) {
      const FunctionalReport r = chang_gui_I(a, u);
      CHECK(r.converged);
      CHECK(std::abs(r.value - oracle_I(a, u, 48)) < 1e-9);
    }
  }
}

TEST_CASE("lorentzian must be positive") {
  ExpMoments m;
  m.m0 = 1.0;
  m.m1 = {1.0, 0.0, 0.0};
  CHECK_THROWS_AS(m.half_log_lorentzian(), InvariantViolation);
}

TEST_CASE("non-convergence is reported") {
  QuadraturePolicy tight;
  tight.max_theta = 24;
  HarmonicField u(4);
  u.coeff(4, 2) = 3.0;
  const FunctionalReport r = chang_gui_I(1.0, u, SphericalGrid::build(8), tight);
  CHECK_FALSE(r.converged);
  CHECK_THROWS_AS(onofri_J(1.0, u, SphericalGrid::build(8), tight), ConvergenceError);
  CHECK_THROWS_AS(cg_bound_slack(1.0, u, SphericalGrid::build(8), tight), ConvergenceError);
}

TEST_CASE("transform examples") {
  const SphericalGrid g = SphericalGrid::build(40);
  Rng rng(42);
  const HarmonicField u = random_field(rng, 8, 0.5);
  const ProjectedField same = transform(u, identity_map(), 8, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
    worst = std::max(worst, std::abs(same.field.coeffs()[i] - u.coeffs()[i]));
  }
  CHECK(worst < 1e-12);

  const SphericalGrid fine = SphericalGrid::build(72);
  const Extremal d = build_extremal(dilation(2.0));
  const ProjectedField t0 = transform(HarmonicField(2), d, 32, fine);
  const ProjectedField p0 = psi_field(d, 32, fine);
  worst = 0.0;
  for (std::size_t i = 0; i < t0.field.coeffs().size(); ++i) {
    worst = std::max(worst, std::abs(t0.field.coeffs()[i] - p0.field.coeffs()[i]));
  }
  CHECK(worst < 1e-15);

  CHECK_THROWS_AS(transform(u, dilation(8.0), 8, g), ConvergenceError);
}

TEST_CASE("conformal invariance on the bounded family") {
  Rng rng(43);
  const SphericalGrid g = SphericalGrid::build(136);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    const HarmonicField u = random_field(rng, 8, 0.3);
    const double before = chang_gui_I(kTwoThirds, u).value;
    for (int j = 0; j < 3; ++j) {
      const ConformalMap tau = random_bounded_map(rng);
      const ProjectedField v = transform(u, tau, 64, g);
      const FunctionalReport after = chang_gui_I(kTwoThirds, v.field);
      CHECK(after.converged);
      worst = std::max(worst, std::abs(after.value - before));
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("chang-gui lower bound") {
  const SphericalGrid g = SphericalGrid::build(16);
  for (double a : {kTwoThirds, 1.0, 2.0}) CHECK(cg_bound_slack(a, HarmonicField(3), g) == 0.0);
  const ProjectedField psi = psi_field(build_extremal(dilation(2.0)), 32, SphericalGrid::build(72));
  CHECK(std::abs(cg_bound_slack(kTwoThirds, psi.field, g)) < 1e-8);
  CHECK_THROWS_AS(cg_bound_slack(0.5, HarmonicField(3), g), std::invalid_argument);

  Rng rng(44);
  double worst = 1.0;
  for (int k = 0; k < 50; ++k) {
    const HarmonicField u = random_field(rng, 1 + rng.below(8), 0.5);
    for (double a : {kTwoThirds, 1.0, 2.0}) worst = std::min(worst, cg_bound_slack(a, u, g));
  }
  CHECK(worst >= -1e-8);
}

TEST_CASE("dirichlet energy is conformally invariant") {
  Rng rng(45);
  const SphericalGrid g = SphericalGrid::build(72);
  for (int k = 0; k < 5; ++k) {
    const HarmonicField u = random_field(rng, 6, 0.5);
    const InvarianceCheck c = dirichlet_invariance_check(u, rotation(random_point(rng), 1.3), 6, g);
    CHECK(c.difference < 1e-10);
    CHECK(c.tail < 1e-12);
  }
  HarmonicField w3(1);
  w3.coeff(1, 0) = 1.0 / std::sqrt(3.0);
  const InvarianceCheck d = dirichlet_invariance_check(w3, dilation(2.0), 32, g);
  CHECK(d.difference <= 1e-6);
  CHECK(dirichlet_invariance_check(constant(2.5, 3), dilation(2.0), 32, g).difference < 1e-20);
}

TEST_CASE("constant shift and ordering") {
  Rng rng(46);
  const SphericalGrid g = SphericalGrid::build(16);
  for (int k = 0; k < 20; ++k) {
    const HarmonicField u = random_field(rng, 6, 0.5);
    const double c = rng.uniform(-5.0, 5.0);
    for (double a : {kTwoThirds, 1.0}) {
      const double i0 = chang_gui_I(a, u).value;
      CHECK(std::abs(chang_gui_I(a, u + constant(c)).value - i0) < 1e-10);
      CHECK(i0 - onofri_J(a, u, g) >= -1e-10);
      CHECK(i0 >= -1e-9);
    }
  }
}
