#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "onofri/extremals.hpp"
#include "onofri/sampling.hpp"
#include "oracles.hpp"

using namespace onofri;

namespace {

double vdiff(const Vec3& a, const Vec3& b) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double norm2(const Vec3& a) { return a[0] * a[0] + a[1] * a[1] + a[2] * a[2]; }

BoundedFamily caps_family() {
  BoundedFamily f;
  f.log_lambda_max = std::log(4.0);
  f.beta_max = 2.0;
  f.mass_cap = 1e9;
  return f;
}

}  // namespace

TEST_CASE("closed-form mass and center of mass") {
  CHECK(mass_closed_form(Generator::make_dilation(1.0)) == 1.0);
  CHECK(mass_closed_form(Generator::make_dilation(2.0)) == 1.25);
  CHECK(std::abs(mass_closed_form(Generator::make_translation({1, 0, 0})) - 1.5) < 1e-15);
  CHECK(mass_closed_form(Generator::make_translation(south_pole())) == 1.0);
  CHECK(mass_closed_form(Generator::make_rotation({0, 1, 0}, 1.0)) == 1.0);
  CHECK(mass_closed_form(Generator::make_inversion()) == 1.0);
  CHECK(vdiff(com_closed_form(Generator::make_dilation(2.0)), {0, 0, -0.6}) < 1e-15);
  CHECK(vdiff(com_closed_form(Generator::make_translation({1, 0, 0})), {-2.0 / 3, 0, 1.0 / 3}) < 1e-15);
  CHECK(vdiff(com_closed_form(Generator::make_inversion()), {0, 0, 0}) == 0.0);
  CHECK_THROWS_AS(mass_closed_form(Generator::make_translation(north_pole())), std::invalid_argument);
  CHECK_THROWS_AS(com_closed_form(Generator::make_dilation(-1.0)), std::invalid_argument);
}

TEST_CASE("numeric mass and center of mass") {
  const SphericalGrid start = SphericalGrid::build(16);
  CHECK(std::abs(mass_numeric(identity_map(), start) - 1.0) < 1e-14);
  CHECK(vdiff(com_numeric(identity_map(), start), {0, 0, 0}) < 1e-15);
  CHECK(std::abs(mass_numeric(dilation(2.0), start) - 1.25) < 1e-12);
  CHECK(std::abs(mass_numeric(translation_to({1, 0, 0}), start) - 1.5) < 1e-12);
  CHECK(vdiff(com_numeric(dilation(2.0), start), {0, 0, -0.6}) < 1e-12);
  CHECK(vdiff(com_numeric(translation_to({1, 0, 0}), start), {-2.0 / 3, 0, 1.0 / 3}) < 1e-12);
}

TEST_CASE("numeric quadrature matches generator closed forms") {
  const SphericalGrid start = SphericalGrid::build(16);
  std::vector<Generator> gens;
  for (double l : {0.25, 0.5, 2.0, 4.0}) gens.push_back(Generator::make_dilation(l));
  Rng rng(31);
  for (int k = 0; k < 10; ++k) {
    gens.push_back(Generator::make_translation(stereo_inverse(PlanePoint::at(random_disk(rng, 2.0)))));
  }
  gens.push_back(Generator::make_rotation(random_point(rng), 2.0));
  gens.push_back(Generator::make_inversion());
  for (const Generator& g : gens) {
    const MassMoments m = mass_moments(g.map(), start);
    CHECK(m.quadrature.converged);
    CHECK(std::abs(m.mass - mass_closed_form(g)) < 1e-10);
    CHECK(vdiff(m.com, com_closed_form(g)) < 1e-10);
  }
}

TEST_CASE("matrix formulas agree with quadrature for compositions") {
  Rng rng(32);
  for (int k = 0; k < 20; ++k) {
    const ConformalMap t = random_bounded_map(rng, caps_family());
    const Extremal num = build_extremal(t);
    const Extremal cf = closed_form_extremal(t);
    CHECK(std::abs(num.mass - cf.mass) < 1e-10 * cf.mass);
    CHECK(vdiff(num.com, cf.com) < 1e-10);
    CHECK(std::abs(num.normalizer - cf.normalizer) < 1e-10);
  }
}

TEST_CASE("extremal examples and invariants") {
  const Extremal id = build_extremal(identity_map());
  CHECK(std::abs(id.mass - 1.0) < 1e-14);
  CHECK(std::abs(id.normalizer) < 1e-14);
  CHECK(norm2(id.com) < 1e-28);

  const Extremal d = build_extremal(dilation(2.0));
  CHECK(std::abs(d.normalizer + 0.5 * std::log(1.25)) < 1e-12);
  CHECK(std::abs(std::exp(4 * d.normalizer) - 0.64) < 1e-12);
  CHECK(std::abs(1.0 - norm2(d.com) - 1.0 / (1.25 * 1.25)) < 1e-12);

  Rng rng(33);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Extremal e = build_extremal(random_bounded_map(rng, caps_family()));
    CHECK(e.mass >= 1.0 - 1e-10);
    CHECK(norm2(e.com) < 1.0);
    CHECK(std::abs(e.normalizer + 0.5 * std::log(e.mass)) < 1e-12);
    worst = std::max(worst, std::abs(std::exp(4 * e.normalizer) - (1.0 - norm2(e.com))));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("mass quadrature reports non-convergence") {
  QuadraturePolicy tight;
  tight.max_theta = 40;
  CHECK_THROWS_AS(mass_numeric(dilation(60.0), SphericalGrid::build(16), tight), ConvergenceError);
  CHECK_THROWS_AS(build_extremal(dilation(60.0), tight), ConvergenceError);
}

TEST_CASE("psi has the logarithmic-kernel form") {
  Rng rng(34);
  for (int k = 0; k < 10; ++k) {
    const Extremal e = build_extremal(random_bounded_map(rng, caps_family()));
    for (int j = 0; j < 10; ++j) {
      const Point3 w = random_point(rng);
      const double expect = -1.5 * std::log(1.0 - w.dot(e.com)) + std::log(1.0 - norm2(e.com));
      CHECK(std::abs(e.psi(w) - expect) < 1e-10);
    }
  }
}

TEST_CASE("psi projection") {
  const SphericalGrid g = SphericalGrid::build(72);
  const ProjectedField id = psi_field(build_extremal(identity_map()), 32, g);
  for (double c : id.field.coeffs()) CHECK(std::abs(c) < 1e-14);

  const ProjectedField d = psi_field(build_extremal(dilation(2.0)), 32, g);
  double off = 0.0;
  for (int l = 1; l <= 32; ++l) {
    for (int m = -l; m <= l; ++m) {
      if (m != 0) off = std::max(off, std::abs(d.field.coeff(l, m)));
    }
  }
  CHECK(off < 1e-12);

  Rng rng(35);
  for (int k = 0; k < 5; ++k) {
    BoundedFamily fam;
    fam.mass_cap = 2.0;
    const Extremal e = build_extremal(random_bounded_map(rng, fam));
    const ProjectedField p = psi_field(e, 32, g);
    const auto exact = oracle::psi_coefficients(e.com, 32);
    double worst = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
      worst = std::max(worst, std::abs(p.field.coeffs()[i] - exact[i]));
    }
    CHECK(worst < 1e-10);
  }

  for (double l : {0.5, 0.7, 1.3, 2.0}) {
    const SphericalGrid g24 = SphericalGrid::build(56);
    const ProjectedField p = psi_field(build_extremal(dilation(l)), 24, g24);
    const SphericalGrid fine = SphericalGrid::build(120);
    auto s = synthesize(p.field, fine).samples();
    for (double& x : s) x = std::exp(2 * x);
    CHECK(std::abs(integrate(fine, s) - 1.0) < 1e-8);
  }

  CHECK_THROWS_AS(psi_field(build_extremal(dilation(16.0)), 8, SphericalGrid::build(24)),
                  ConvergenceError);
  CHECK_THROWS_AS(psi_field(build_extremal(dilation(2.0)), 80, g), std::invalid_argument);
}

TEST_CASE("tauhalf relation") {
  const SphericalGrid g = SphericalGrid::build(40);
  CHECK(tauhalf_residual(build_extremal(identity_map()), g) < 1e-14);
  CHECK(tauhalf_residual(build_extremal(dilation(2.0)), g) < 1e-10);
  Rng rng(36);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    worst = std::max(worst, tauhalf_residual(build_extremal(random_bounded_map(rng, caps_family())), g));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("Euler-Lagrange residual") {
  const SphericalGrid g = SphericalGrid::build(72);
  CHECK(el_residual(build_extremal(identity_map()), 32, g) < 1e-14);
  CHECK(el_residual(build_extremal(dilation(2.0)), 32, g) < 1e-6);
  CHECK(el_residual(build_extremal(translation_to({1, 0, 0})), 32, g) < 1e-6);
}

TEST_CASE("left rotations do not change the extremal") {
  Rng rng(37);
  const SphericalGrid g = SphericalGrid::build(72);
  for (int k = 0; k < 5; ++k) {
    BoundedFamily fam;
    fam.mass_cap = 2.0;
    const ConformalMap t = random_bounded_map(rng, fam);
    const ConformalMap r = compose(rotation(random_point(rng), rng.uniform(0.0, 6.0)), t);
    const Extremal a = build_extremal(t), b = build_extremal(r);
    CHECK(std::abs(a.mass - b.mass) < 1e-12);
    CHECK(std::abs(a.normalizer - b.normalizer) < 1e-12);
    const ProjectedField pa = psi_field(a, 32, g), pb = psi_field(b, 32, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < pa.field.coeffs().size(); ++i) {
      worst = std::max(worst, std::abs(pa.field.coeffs()[i] - pb.field.coeffs()[i]));
    }
    CHECK(worst < 1e-10);
  }
}
