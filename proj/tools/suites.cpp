#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "onofri/lorentz.hpp"
#include "onofri/parallel.hpp"
#include "onofri/sampling.hpp"

namespace onofri::cli {

Json RunConfig::to_json() const {
  return {{"grid_band", grid_band}, {"oversample", oversample}, {"l_max", l_max},
          {"seed", seed},           {"jobs", jobs},             {"alpha", alpha},
          {"tol_scale", tol_scale}};
}

namespace {

double dist3(const Point3& a, const Point3& b) {
  return std::hypot(a.w1() - b.w1(), a.w2() - b.w2(), a.w3() - b.w3());
}

double vdiff(const Vec3& a, const Vec3& b) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double vnorm(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

std::vector<ConformalMap> bounded_maps(std::uint64_t seed, int n) {
  Rng rng(seed);
  std::vector<ConformalMap> out;
  for (int k = 0; k < n; ++k) out.push_back(random_bounded_map(rng));
  return out;
}

Row row(const char* suite, std::string check, double value, double expected, double tol) {
  return {suite, std::move(check), value, expected, std::abs(value - expected), tol};
}

std::vector<Row> geometry(const RunConfig& c) {
  Rng rng(c.seed);
  double sphere = 0.0, plane = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Point3 w = random_point(rng);
    sphere = std::max(sphere, dist3(stereo_inverse(stereo_project(w)), w));
    const Complex z = random_disk(rng, 4.0);
    plane = std::max(plane, std::abs(stereo_project(stereo_inverse(PlanePoint::at(z))).z() - z));
  }
  const SphericalGrid g = SphericalGrid::build(c.grid_band, c.oversample);
  const double total = pairwise_sum(g.weights());
  const int L = g.band_limit_exact() / 2;
  std::vector<double> y2;
  y2.reserve(g.size());
  for (const Point3& w : g.nodes()) y2.push_back(std::pow(real_harmonic(L, L / 2, w), 2));
  return {
      {"geometry", "sphere -> plane -> sphere round trip", sphere, 0.0, sphere, c.tol(1e-13)},
      {"geometry", "plane -> sphere -> plane round trip", plane, 0.0, plane, c.tol(1e-13)},
      row("geometry", "sum of grid weights", total, 1.0, c.tol(1e-13)),
      row("geometry", "int Y_" + std::to_string(L) + "," + std::to_string(L / 2) + "^2",
          integrate(g, y2), 1.0, c.tol(1e-12)),
  };
}

std::vector<Row> jacobian_suite(const RunConfig& c) {
  std::vector<Row> out;
  const std::vector<ConformalMap> maps = bounded_maps(c.seed, 5);
  const QuadraturePolicy policy;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const ConformalMap& t = maps[k];
    const AdaptiveResult r = integrate_adaptive(
        SphericalGrid::build(16), policy, [&](const SphericalGrid& g) {
          std::vector<double> j(g.size());
          parallel_for(g.size(), [&](std::size_t i) { j[i] = jacobian(t, g.nodes()[i]); });
          return std::vector<double>{integrate(g, j)};
        });
    out.push_back(row("jacobian", "int J, map " + std::to_string(k), r.values[0], 1.0, c.tol(1e-10)));
  }
  Rng rng(c.seed + 1);
  double chain = 0.0;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const ConformalMap& t1 = maps[k];
    const ConformalMap& t2 = maps[(k + 1) % maps.size()];
    const ConformalMap t12 = compose(t1, t2);
    for (int i = 0; i < 50; ++i) {
      const Point3 w = random_point(rng);
      const double lhs = jacobian(t12, w);
      chain = std::max(chain, std::abs(lhs - jacobian(t1, apply(t2, w)) * jacobian(t2, w)) / lhs);
    }
  }
  out.push_back({"jacobian", "chain rule, relative", chain, 0.0, chain, c.tol(1e-12)});
  for (std::size_t k = 0; k < maps.size(); ++k) {
    ConformalMap t = maps[k];
    if (frobenius_mass(t) < 1.05) continue;
    const Point3 p = random_point(rng);
    const double j0 = jacobian(t, p);
    const double e1 = std::abs(jacobian_area_oracle(t, p, 0.04) - j0);
    const double e2 = std::abs(jacobian_area_oracle(t, p, 0.02) - j0);
    out.push_back(row("jacobian", "area limit error ratio, map " + std::to_string(k), e1 / e2, 4.0,
                      c.tol(0.8)));
  }
  return out;
}

std::string generator_name(const Generator& g) {
  char buf[96];
  if (g.kind == Generator::Kind::dilation) {
    std::snprintf(buf, sizeof buf, "dilation %g", g.lambda);
  } else {
    std::snprintf(buf, sizeof buf, "translation to (%.3f, %.3f, %.3f)", g.p.w1(), g.p.w2(), g.p.w3());
  }
  return buf;
}

std::vector<Row> mass_com(const RunConfig& c) {
  std::vector<Generator> gens;
  for (double l : {0.25, 0.5, 2.0, 4.0}) gens.push_back(Generator::make_dilation(l));
  Rng rng(c.seed);
  for (int k = 0; k < 3; ++k) gens.push_back(Generator::make_translation(random_point(rng)));
  const SphericalGrid start = SphericalGrid::build(16);
  std::vector<Row> out;
  for (const Generator& g : gens) {
    const MassMoments m = mass_moments(g.map(), start);
    if (!m.quadrature.converged) throw ConvergenceError("mass_com: quadrature did not converge");
    const std::string name = generator_name(g);
    out.push_back(row("mass_com", "mass, " + name, m.mass, mass_closed_form(g), c.tol(1e-10)));
    const Vec3 a = com_closed_form(g);
    out.push_back({"mass_com", "|com|, " + name, vnorm(m.com), vnorm(a), vdiff(m.com, a),
                   c.tol(1e-10)});
  }
  return out;
}

std::vector<Row> lorentz(const RunConfig& c) {
  Rng rng(c.seed);
  std::vector<MobiusMap> maps;
  for (int k = 0; k < 5; ++k) maps.push_back(random_mobius(rng));
  std::vector<Row> out;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const LorentzMatrix m = lorentz_lift(maps[k]);
    const std::string id = ", map " + std::to_string(k);
    const double metric = m.metric_residual();
    const double hom = homomorphism_check(maps[k], maps[(k + 1) % maps.size()]);
    double cone = 0.0;
    for (int i = 0; i < 20; ++i) {
      cone = std::max(cone, lightcone_identity_residual({maps[k], false}, random_point(rng)));
    }
    out.push_back({"lorentz", "M^T eta M - eta" + id, metric, 0.0, metric, c.tol(1e-11)});
    out.push_back(row("lorentz", "det" + id, m.det(), 1.0, c.tol(1e-11)));
    out.push_back({"lorentz", "homomorphism" + id, hom, 0.0, hom, c.tol(1e-11)});
    out.push_back({"lorentz", "light cone" + id, cone, 0.0, cone, c.tol(1e-11)});
  }
  return out;
}

std::vector<Row> invariance(const RunConfig& c) {
  const int L = std::max(64, c.l_max);
  const SphericalGrid g = SphericalGrid::build(std::max(c.grid_band, 2 * L + 8), c.oversample);
  Rng rng(c.seed);
  std::vector<Row> out;
  for (int i = 0; i < 3; ++i) {
    const HarmonicField u = random_field(rng, 1 + rng.below(8), 0.5);
    const double before = chang_gui_I(2.0 / 3.0, u).value;
    for (int j = 0; j < 3; ++j) {
      const ProjectedField v = transform(u, random_bounded_map(rng), L, g);
      const FunctionalReport after = chang_gui_I(2.0 / 3.0, v.field);
      if (!after.converged) throw ConvergenceError("invariance: functional did not converge");
      out.push_back(row("invariance",
                        "I_2/3(u_tau) vs I_2/3(u), field " + std::to_string(i) + " map " +
                            std::to_string(j),
                        after.value, before, c.tol(1e-6)));
    }
  }
  return out;
}

std::vector<Row> extremal(const RunConfig& c) {
  const SphericalGrid g = SphericalGrid::build(c.grid_band, c.oversample);
  std::vector<Row> out;
  const std::vector<ConformalMap> maps = bounded_maps(c.seed, 5);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const Extremal e = build_extremal(maps[k]);
    const Vec3& a = e.com;
    const std::string id = ", map " + std::to_string(k);
    out.push_back(row("extremal", "e^{4c} vs 1 - |a|^2" + id, std::exp(4.0 * e.normalizer),
                      1.0 - (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]), c.tol(1e-8)));
    const ProjectedField p =
        psi_field(e, c.l_max, g, std::numeric_limits<double>::infinity());
    const FunctionalReport r = chang_gui_I(2.0 / 3.0, p.field);
    if (!r.converged) throw ConvergenceError("extremal: functional did not converge");
    out.push_back(row("extremal", "I_2/3(psi)" + id, r.value, 0.0, c.tol(1e-8)));
  }
  return out;
}

std::vector<Row> tauhalf(const RunConfig& c) {
  const SphericalGrid g = SphericalGrid::build(c.grid_band, c.oversample);
  std::vector<Row> out;
  const std::vector<ConformalMap> maps = bounded_maps(c.seed, 5);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const double r = tauhalf_residual(build_extremal(maps[k]), g);
    out.push_back({"tauhalf", "max nodal residual, map " + std::to_string(k), r, 0.0, r,
                   c.tol(1e-8)});
  }
  return out;
}

std::vector<Row> el(const RunConfig& c) {
  const SphericalGrid g = SphericalGrid::build(c.grid_band, c.oversample);
  Rng rng(c.seed);
  std::vector<std::pair<std::string, ConformalMap>> maps = {
      {"dilation 0.5", dilation(0.5)}, {"dilation 2", dilation(2.0)}};
  for (int k = 0; k < 2; ++k) {
    const Complex b = random_disk(rng, 1.0);
    char buf[64];
    std::snprintf(buf, sizeof buf, "translation (%.3f, %.3f)", b.real(), b.imag());
    maps.emplace_back(buf, translation(b));
  }
  std::vector<Row> out;
  for (const auto& [name, t] : maps) {
    const double r = el_residual(build_extremal(t), c.l_max, g);
    out.push_back({"el", "sup-norm residual, " + name, r, 0.0, r, c.tol(1e-6)});
  }
  return out;
}

const std::map<std::string, std::function<std::vector<Row>(const RunConfig&)>>& table() {
  static const std::map<std::string, std::function<std::vector<Row>(const RunConfig&)>> t = {
      {"geometry", geometry}, {"jacobian", jacobian_suite}, {"mass_com", mass_com},
      {"lorentz", lorentz},   {"invariance", invariance},   {"extremal", extremal},
      {"tauhalf", tauhalf},   {"el", el}};
  return t;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"geometry",   "jacobian", "mass_com",
                                                 "lorentz",    "invariance", "extremal",
                                                 "tauhalf",    "el",        "all"};
  return names;
}

std::vector<Row> run_suite(const std::string& name, const RunConfig& config) {
  if (name == "all") {
    std::vector<Row> out;
    for (const std::string& n : suite_names()) {
      if (n == "all") continue;
      std::vector<Row> r = table().at(n)(config);
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }
  const auto it = table().find(name);
  if (it == table().end()) throw std::invalid_argument("unknown suite " + name);
  return it->second(config);
}

}  // namespace onofri::cli
