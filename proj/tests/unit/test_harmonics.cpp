#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "onofri/harmonics.hpp"
#include "onofri/parallel.hpp"
#include "onofri/sampling.hpp"
#include "oracles.hpp"

using namespace onofri;

namespace {

std::vector<double> node_values(const SphericalGrid& g, double (*f)(const Point3&)) {
  std::vector<double> s(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) s[i] = f(g.nodes()[i]);
  return s;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("field construction") {
  HarmonicField f(3);
  CHECK(f.coeffs().size() == 16);
  CHECK(HarmonicField::index(1, -1) == 1);
  CHECK(HarmonicField::index(1, 1) == 3);
  CHECK_THROWS_AS(HarmonicField(2, std::vector<double>(5)), std::invalid_argument);
  CHECK_THROWS_AS(HarmonicField(-1), std::invalid_argument);
  f.coeff(0, 0) = 2.5;
  CHECK(f.mean() == 2.5);
  const HarmonicField g = f.resized(1);
  CHECK(g.coeffs().size() == 4);
  CHECK(g.mean() == 2.5);
}

TEST_CASE("harmonics match the independent basis") {
  Rng rng(3);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Point3 w = random_point(rng);
    const double t = std::acos(w.w3()), p = std::atan2(w.w2(), w.w1());
    for (int l = 0; l <= 30; ++l) {
      for (int m = -l; m <= l; ++m) {
        worst = std::max(worst, std::abs(real_harmonic(l, m, w) - oracle::ylm(l, m, t, p)));
      }
    }
  }
  CHECK(worst < 1e-11);
  const Point3 w(0.3, -0.4, 0.5);
  CHECK(std::abs(real_harmonic(1, 0, w) - std::sqrt(3.0) * w.w3()) < 1e-15);
  CHECK(std::abs(real_harmonic(1, 1, w) - std::sqrt(3.0) * w.w1()) < 1e-15);
  CHECK(std::abs(real_harmonic(1, -1, w) - std::sqrt(3.0) * w.w2()) < 1e-15);
}

TEST_CASE("synthesis examples") {
  const SphericalGrid g = SphericalGrid::build(10, 1.0);
  CHECK(max_abs(synthesize(HarmonicField(4), g).samples()) == 0.0);

  HarmonicField c(4);
  c.coeff(0, 0) = -1.75;
  const GridField cs = synthesize(c, g);
  for (double v : cs.samples()) CHECK(std::abs(v + 1.75) < 1e-14);

  HarmonicField w3(1);
  w3.coeff(1, 0) = 1.0 / std::sqrt(3.0);
  const GridField s = synthesize(w3, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(s.samples()[i] - g.nodes()[i].w3()));
  }
  CHECK(worst < 1e-13);
  CHECK_THROWS_AS(synthesize(HarmonicField(22), g), std::invalid_argument);
}

TEST_CASE("analysis examples") {
  const SphericalGrid g = SphericalGrid::build(12, 1.0);
  std::vector<double> y10(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) y10[i] = std::sqrt(3.0) * g.nodes()[i].w3();
  const HarmonicField a = analyze(GridField(g, y10), 6);
  for (int l = 0; l <= 6; ++l) {
    for (int m = -l; m <= l; ++m) {
      const double expect = (l == 1 && m == 0) ? 1.0 : 0.0;
      CHECK(std::abs(a.coeff(l, m) - expect) < 1e-12);
    }
  }

  const HarmonicField c = analyze(GridField(g, std::vector<double>(g.size(), 0.4)), 6);
  CHECK(std::abs(c.mean() - 0.4) < 1e-14);

  // Inner products of w3^2 from the independent product rule.
  const double c00 = oracle::sphere_mean(
      [](double t, double) { return std::cos(t) * std::cos(t); }, 40, 8);
  const double c20 = oracle::sphere_mean(
      [](double t, double p) { return std::cos(t) * std::cos(t) * oracle::ylm(2, 0, t, p); }, 40, 8);
  CHECK(std::abs(c00 - 1.0 / 3.0) < 1e-14);
  CHECK(std::abs(c20 - 0.29814239699997197) < 1e-14);

  const HarmonicField sq = analyze(
      GridField(g, node_values(g, [](const Point3& w) { return w.w3() * w.w3(); })), 6);
  CHECK(std::abs(sq.coeff(0, 0) - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(sq.coeff(2, 0) - 0.29814239699997197) < 1e-12);
  double rest = 0.0;
  for (int l = 1; l <= 6; ++l) {
    for (int m = -l; m <= l; ++m) {
      if (!(l == 2 && m == 0)) rest = std::max(rest, std::abs(sq.coeff(l, m)));
    }
  }
  CHECK(rest < 1e-12);
  CHECK_THROWS_AS(analyze(GridField(g, y10), 13), std::invalid_argument);
  CHECK_THROWS_AS(GridField(g, std::vector<double>(4)), std::invalid_argument);
}

TEST_CASE("analysis inverts synthesis for band-limited fields") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int L = 1 + rng.below(24);
    const HarmonicField f = random_field(rng, L, 1.0);
    const SphericalGrid g = SphericalGrid::build(2 * L + rng.below(5), 1.0 + 0.5 * rng.uniform());
    const HarmonicField back = analyze(synthesize(f, g), L);
    double worst = 0.0;
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
      worst = std::max(worst, std::abs(back.coeffs()[k] - f.coeffs()[k]));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("pointwise evaluation agrees with synthesis") {
  Rng rng(4);
  const HarmonicField f = random_field(rng, 12, 1.0);
  const SphericalGrid g = SphericalGrid::build(12, 1.0);
  const auto s = synthesize(f, g).samples();
  const auto e = evaluate(f, g.nodes());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(s[i] - e[i]) < 1e-12);
}

TEST_CASE("Parseval and Green identities") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const int L = 1 + rng.below(12);
    const HarmonicField u = random_field(rng, L, 1.0);
    const HarmonicField v = random_field(rng, L, 1.0);
    const SphericalGrid g = SphericalGrid::build(2 * L, 1.0);
    const auto su = synthesize(u, g).samples();
    const auto slv = synthesize(laplacian(v), g).samples();
    std::vector<double> uu(g.size()), ulv(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      uu[i] = su[i] * su[i];
      ulv[i] = su[i] * slv[i];
    }
    double parseval = 0.0, green = 0.0;
    for (int l = 0; l <= L; ++l) {
      for (int m = -l; m <= l; ++m) {
        parseval += u.coeff(l, m) * u.coeff(l, m);
        green -= l * (l + 1.0) * u.coeff(l, m) * v.coeff(l, m);
      }
    }
    CHECK(std::abs(integrate(g, uu) - parseval) < 1e-12 * std::max(1.0, parseval));
    CHECK(std::abs(integrate(g, ulv) - green) < 1e-12 * std::max(1.0, std::abs(green)));
  }
}

TEST_CASE("Dirichlet energy examples") {
  CHECK(dirichlet_energy(HarmonicField(5)) == 0.0);
  HarmonicField c(3);
  c.coeff(0, 0) = 9.0;
  CHECK(dirichlet_energy(c) == 0.0);
  HarmonicField w3(1);
  w3.coeff(1, 0) = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(dirichlet_energy(w3) - 2.0 / 3.0) < 1e-15);
  w3.coeff(0, 0) = 4.0;
  CHECK(std::abs(dirichlet_energy(w3) - 2.0 / 3.0) < 1e-15);
  const std::vector<double> cw(w3.coeffs().begin(), w3.coeffs().end());
  CHECK(std::abs(oracle::fd_dirichlet_energy(cw, 1, 24, 24) - 2.0 / 3.0) < 1e-8);
}

TEST_CASE("Dirichlet energy agrees with finite-difference gradients") {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const int L = 1 + rng.below(8);
    const HarmonicField u = random_field(rng, L, 1.0);
    const std::vector<double> c(u.coeffs().begin(), u.coeffs().end());
    const double fd = oracle::fd_dirichlet_energy(c, L, 2 * L + 4, 2 * L + 4);
    CHECK(std::abs(fd - dirichlet_energy(u)) < 1e-6 * dirichlet_energy(u));
  }
}

TEST_CASE("Laplacian examples and multiplier signs") {
  HarmonicField c(2);
  c.coeff(0, 0) = 3.0;
  CHECK(max_abs(laplacian(c).coeffs()) == 0.0);
  HarmonicField w3(1);
  w3.coeff(1, 0) = 0.5;
  CHECK(laplacian(w3).coeff(1, 0) == -1.0);
  HarmonicField ones(10);
  for (double& x : ones.coeffs()) x = 1.0;
  const HarmonicField lap = laplacian(ones);
  for (int l = 0; l <= 10; ++l) {
    for (int m = -l; m <= l; ++m) CHECK(lap.coeff(l, m) == -l * (l + 1.0));
  }
}

TEST_CASE("transforms do not depend on the job count") {
  Rng rng(2);
  const HarmonicField f = random_field(rng, 20, 1.0);
  const SphericalGrid g = SphericalGrid::build(48, 1.2);
  set_max_jobs(1);
  const auto s1 = synthesize(f, g).samples();
  const HarmonicField a1 = analyze(GridField(g, s1), 20);
  set_max_jobs(3);
  const auto s3 = synthesize(f, g).samples();
  const HarmonicField a3 = analyze(GridField(g, s3), 20);
  set_max_jobs(1);
  CHECK(s1 == s3);
  CHECK(std::equal(a1.coeffs().begin(), a1.coeffs().end(), a3.coeffs().begin()));
}
