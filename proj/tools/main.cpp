#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "onofri/lorentz.hpp"
#include "onofri/parallel.hpp"
#include "onofri/sampling.hpp"
#include "suites.hpp"

using namespace onofri;
using onofri::cli::RunConfig;

namespace {

namespace fs = std::filesystem;

/// Exit status 1: a violated identity or a computation that did not converge.
struct Violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double clean(double x) { return x == 0.0 ? 0.0 : x; }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", clean(x));
  return buf;
}

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json(out, j);
  }
}

QuadraturePolicy policy_of(const RunConfig& c) {
  QuadraturePolicy p;
  p.oversample = c.oversample;
  p.tail_threshold = c.tol(p.tail_threshold);
  return p;
}

SphericalGrid grid_for(const RunConfig& c, int l_max) {
  return SphericalGrid::build(std::max(c.grid_band, 2 * l_max + 8), c.oversample);
}

HarmonicField read_field(const std::string& path) { return field_from_json(read_json(path)); }

int cmd_verify(const std::string& suite, const RunConfig& c, const std::string& out) {
  const std::vector<cli::Row> rows = cli::run_suite(suite, c);
  std::size_t width = 5;
  for (const cli::Row& r : rows) width = std::max(width, r.check.size());
  std::printf("%-10s  %-*s  %24s  %24s  %10s  %10s  %s\n", "suite", static_cast<int>(width), "check",
              "value", "expected", "residual", "tolerance", "status");
  bool ok = true;
  Json table = Json::array();
  for (const cli::Row& r : rows) {
    ok = ok && r.pass();
    std::printf("%-10s  %-*s  %24.17g  %24.17g  %10.3e  %10.3e  %s\n", r.suite.c_str(),
                static_cast<int>(width), r.check.c_str(), clean(r.value), clean(r.expected),
                r.residual, r.tolerance, r.pass() ? "pass" : "FAIL");
    table.push_back({{"suite", r.suite},
                     {"check", r.check},
                     {"value", r.value},
                     {"expected", r.expected},
                     {"residual", r.residual},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass()}});
  }
  std::printf("%s: %zu checks, %s\n", suite.c_str(), rows.size(), ok ? "all pass" : "FAILED");
  if (!out.empty()) write_json(out, {{"config", c.to_json()}, {"suite", suite}, {"rows", table}});
  return ok ? 0 : 1;
}

int cmd_eval(const std::string& path, const RunConfig& c, const std::string& out) {
  const HarmonicField u = read_field(path);
  const FunctionalReport r = chang_gui_I(c.alpha, u, policy_of(c));
  emit({{"config", c.to_json()}, {"input", path}, {"report", to_json(r)}}, out);
  if (!r.converged) throw Violation("eval: quadrature did not converge");
  return 0;
}

int cmd_normalize(const std::string& path, const RunConfig& c, const std::string& out) {
  const HarmonicField u = read_field(path);
  const QuadraturePolicy policy = policy_of(c);
  const NormalizationResult r = normalize(u, policy, c.tol(1e-10));

  std::string failure;
  for (int L = std::max(c.l_max, u.l_max()); L <= 192; L += L / 2 + 1) {
    try {
      const ProjectedField v = transform(u, r.tau, L, grid_for(c, L), policy);
      fs::path target = out;
      if (target.empty()) {
        target = fs::path(path).parent_path() / (fs::path(path).stem().string() + ".normalized.json");
      }
      write_json(target, to_json(v.field));
      emit({{"config", c.to_json()},
            {"input", path},
            {"normalization", to_json(r)},
            {"output", {{"path", target.string()},
                        {"l_max", L},
                        {"grid", to_json(v.grid)},
                        {"tail", v.tail},
                        {"nonconstant_norm", std::sqrt(nonconstant_norm2(v.field))}}}},
           "");
      return 0;
    } catch (const ConvergenceError& e) {
      failure = e.what();
    }
  }
  throw Violation("normalize: transformed field not resolved up to l_max 192 (" + failure + ")");
}

struct Sample {
  std::uint64_t seed;
  HarmonicField u;
};

int cmd_stability(const std::string& path, int random, const RunConfig& c,
                  const std::string& csv, const std::string& out) {
  std::vector<Sample> samples;
  if (!path.empty()) {
    samples.push_back({c.seed, read_field(path)});
  } else {
    for (int i = 0; i < random; ++i) {
      const std::uint64_t s = c.seed + static_cast<std::uint64_t>(i);
      Rng rng(s);
      HarmonicField u = random_field(rng, 1 + rng.below(6), 0.4);
      samples.push_back({s, std::move(u)});
    }
  }

  Json reports = Json::array();
  std::string table = "seed,deficit,distance,slack,log_lambda,beta1,beta2\n";
  bool converged = true;
  std::string violation;
  for (const Sample& s : samples) {
    const int L = std::max(c.l_max, s.u.l_max());
    StabilityOptions o;
    o.seed = s.seed;
    o.policy = policy_of(c);
    StabilityReport r;
    try {
      r = stability_check(s.u, L, grid_for(c, L), o);
    } catch (const InvariantViolation& e) {
      violation = e.what();
      continue;
    }
    converged = converged && r.deficit_converged && r.distance_converged;
    Json j = {{"seed", s.seed}, {"l_max", L}, {"report", to_json(r)}};
    if (path.empty()) j["field"] = to_json(s.u);
    reports.push_back(std::move(j));
    table += std::to_string(s.seed) + "," + num(r.deficit) + "," + num(r.distance) + "," +
             num(r.slack) + "," + num(r.argmin.log_lambda) + "," + num(r.argmin.beta1) + "," +
             num(r.argmin.beta2) + "\n";
  }
  Json doc = {{"config", c.to_json()}};
  if (!path.empty()) doc["input"] = path;
  doc["samples"] = std::move(reports);
  emit(doc, out);
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw std::runtime_error("cannot write " + csv);
    f << table;
  }
  if (!violation.empty()) throw Violation(violation);
  if (!converged) throw Violation("stability: a minimization did not converge");
  return 0;
}

int cmd_lift(const std::string& path, const RunConfig& c, const std::string& out) {
  Complex det;
  const ConformalMap t = map_from_json(read_json(path), &det);
  if (t.reflect) throw FormatError("lift: orientation-reversing maps have no Lorentz lift");
  const bool renormalized = std::abs(det - Complex(1.0)) > 1e-12;
  if (renormalized) {
    std::cerr << "warning: determinant " << det.real() << (det.imag() < 0 ? " - " : " + ")
              << std::abs(det.imag()) << "i is not 1; matrix renormalized\n";
  }
  const LorentzMatrix m = lorentz_lift(t.mobius);
  Rng rng(c.seed);
  double cone = 0.0;
  for (int i = 0; i < 8; ++i) cone = std::max(cone, lightcone_identity_residual(t, random_point(rng)));
  const double metric = m.metric_residual();
  Json entries = Json::array();
  for (double x : m.row_major()) entries.push_back(clean(x));
  emit({{"config", c.to_json()},
        {"input", path},
        {"map", to_json(t)},
        {"renormalized", renormalized},
        {"matrix", std::move(entries)},
        {"metric_residual", metric},
        {"lightcone_residual", cone},
        {"lightcone_points", 8}},
       out);
  if (!(metric <= c.tol(1e-10) && cone <= c.tol(1e-10))) {
    throw Violation("lift: residuals exceed " + num(c.tol(1e-10)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chang-Gui functional on the 2-sphere: identities, evaluation, normalization, stability"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  std::string out;
  app.add_option("--grid-band", c.grid_band, "band of the sampling grid for projections")
      ->check(CLI::PositiveNumber);
  app.add_option("--oversample", c.oversample, "ring oversampling factor")
      ->check(CLI::Range(1.0, 8.0));
  app.add_option("--lmax", c.l_max, "band limit of projected fields")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "output file (default: standard output)");

  std::string suite;
  CLI::App* verify = app.add_subcommand("verify", "run an identity suite");
  verify->add_option("suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember(cli::suite_names()));

  std::string field;
  CLI::App* eval = app.add_subcommand("eval", "evaluate I_alpha of a field file");
  eval->add_option("field", field, "field JSON")->required();
  eval->add_option("--alpha", c.alpha, "alpha")->check(CLI::PositiveNumber);

  CLI::App* norm = app.add_subcommand("normalize", "zero the center of mass of e^{2u}");
  norm->add_option("field", field, "field JSON")->required();

  int random = 0;
  std::string csv;
  CLI::App* stab = app.add_subcommand("stability", "deficit against distance to the extremals");
  auto* stab_field = stab->add_option("field", field, "field JSON");
  auto* stab_random = stab->add_option("--random", random, "number of random fields")
                          ->check(CLI::PositiveNumber);
  stab_field->excludes(stab_random);
  stab->add_option("--csv", csv, "CSV table path");

  std::string map_path;
  CLI::App* lift = app.add_subcommand("lift", "Lorentz matrix of a Mobius map");
  lift->add_option("mobius", map_path, "map JSON")->required();

  try {
    app.parse(argc, argv);
    if (stab->parsed() && field.empty() && random == 0) {
      throw CLI::ValidationError("stability", "give a field file or --random n");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (const char* s = std::getenv("ONOFRI_TOL_SCALE")) {
    char* end = nullptr;
    c.tol_scale = std::strtod(s, &end);
    if (end == s || *end != '\0' || !std::isfinite(c.tol_scale) || c.tol_scale <= 0.0) {
      std::cerr << "error: ONOFRI_TOL_SCALE must be a positive number\n";
      return 2;
    }
  }
  set_max_jobs(c.jobs);

  try {
    if (verify->parsed()) return cmd_verify(suite, c, out);
    if (eval->parsed()) return cmd_eval(field, c, out);
    if (norm->parsed()) return cmd_normalize(field, c, out);
    if (stab->parsed()) return cmd_stability(field, random, c, csv, out);
    return cmd_lift(map_path, c, out);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
