#include "onofri/io.hpp"

#include <cmath>
#include <fstream>
#include <string>

namespace onofri {

namespace {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing entry \"") + key + "\"");
  const Json& v = j.at(key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw FormatError(std::string("entry \"") + key + "\" must be [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Json vec_json(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const GridDescriptor& g) {
  return {{"theta_count", g.theta_count},
          {"phi_count", g.phi_count},
          {"band_limit_exact", g.band_limit_exact}};
}

Json to_json(const HarmonicField& f) {
  Json c = Json::array();
  for (double x : f.coeffs()) c.push_back(x);
  return {{"l_max", f.l_max()}, {"coeffs", std::move(c)}};
}

Json to_json(const MobiusMap& m) {
  return {{"a", complex_json(m.a())},
          {"b", complex_json(m.b())},
          {"c", complex_json(m.c())},
          {"d", complex_json(m.d())}};
}

Json to_json(const ConformalMap& t) {
  Json j = to_json(t.mobius);
  j["reflect"] = t.reflect;
  return j;
}

Json to_json(const LorentzMatrix& l) {
  Json a = Json::array();
  for (double x : l.row_major()) a.push_back(x);
  return a;
}

Json to_json(const Extremal& e) {
  return {{"tau", to_json(e.tau)},
          {"mass", e.mass},
          {"com", vec_json(e.com)},
          {"normalizer", e.normalizer}};
}

Json to_json(const FunctionalReport& r) {
  return {{"alpha", r.alpha},       {"energy", r.energy},
          {"mean", r.mean},         {"log_mass", r.log_mass},
          {"lorentzian", r.lorentzian}, {"value", r.value},
          {"grid", to_json(r.grid)}, {"converged", r.converged}};
}

Json to_json(const NormalizationResult& r) {
  return {{"x0", Json::array({r.x0.x1(), r.x0.x2()})},
          {"lambda0", r.lambda0},
          {"tau", to_json(r.tau)},
          {"residual_com_norm", r.residual_com_norm},
          {"method", to_string(r.method)},
          {"lambda_closed_form", finite_or_null(r.lambda_closed_form)},
          {"lambda_root_find", finite_or_null(r.lambda_root_find)}};
}

Json to_json(const ManifoldPoint& m) {
  return {{"log_lambda", m.log_lambda}, {"beta1", m.beta1}, {"beta2", m.beta2}};
}

Json to_json(const StabilityReport& r) {
  Json trace = Json::array();
  for (const StartRecord& s : r.trace) {
    trace.push_back({{"kind", s.kind},
                     {"start", to_json(s.start)},
                     {"start_value", finite_or_null(s.start_value)},
                     {"end", to_json(s.end)},
                     {"value", finite_or_null(s.value)},
                     {"evaluations", s.evaluations},
                     {"converged", s.converged},
                     {"at_boundary", s.at_boundary}});
  }
  return {{"deficit", r.deficit},
          {"distance", finite_or_null(r.distance)},
          {"slack", finite_or_null(r.slack)},
          {"argmin", to_json(r.argmin)},
          {"deficit_converged", r.deficit_converged},
          {"distance_converged", r.distance_converged},
          {"warm_start_ratio", finite_or_null(r.warm_start_ratio)},
          {"evaluations", r.evaluations},
          {"trace", std::move(trace)}};
}

GridDescriptor grid_from_json(const Json& j) {
  try {
    return {j.at("theta_count").get<int>(), j.at("phi_count").get<int>(),
            j.at("band_limit_exact").get<int>()};
  } catch (const Json::exception& e) {
    throw FormatError(std::string("grid descriptor: ") + e.what());
  }
}

HarmonicField field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("l_max") || !j.contains("coeffs")) {
    throw FormatError("field: expected {\"l_max\": L, \"coeffs\": [...]}");
  }
  if (!j["l_max"].is_number_integer() || j["l_max"].get<long long>() < 0) {
    throw FormatError("field: l_max must be a nonnegative integer");
  }
  const int L = j["l_max"].get<int>();
  const Json& c = j["coeffs"];
  if (!c.is_array()) throw FormatError("field: coeffs must be an array");
  if (c.size() != HarmonicField::size_for(L)) {
    throw FormatError("field: expected " + std::to_string(HarmonicField::size_for(L)) +
                      " coefficients for l_max " + std::to_string(L) + ", got " +
                      std::to_string(c.size()));
  }
  std::vector<double> v;
  v.reserve(c.size());
  for (const Json& x : c) {
    if (!x.is_number()) throw FormatError("field: coefficients must be numbers");
    v.push_back(x.get<double>());
    if (!std::isfinite(v.back())) throw FormatError("field: non-finite coefficient");
  }
  return HarmonicField(L, std::move(v));
}

ConformalMap map_from_json(const Json& j, Complex* raw_det) {
  if (!j.is_object()) throw FormatError("map: expected an object");
  const Complex a = complex_from(j, "a"), b = complex_from(j, "b");
  const Complex c = complex_from(j, "c"), d = complex_from(j, "d");
  if (raw_det) *raw_det = a * d - b * c;
  bool reflect = false;
  if (j.contains("reflect")) {
    if (!j["reflect"].is_boolean()) throw FormatError("map: reflect must be a boolean");
    reflect = j["reflect"].get<bool>();
  }
  try {
    return {MobiusMap(a, b, c, d), reflect};
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("map: ") + e.what());
  }
}

LorentzMatrix lorentz_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 16) throw FormatError("lorentz: expected 16 numbers");
  std::array<double, 16> m{};
  for (std::size_t i = 0; i < 16; ++i) {
    if (!j[i].is_number()) throw FormatError("lorentz: entries must be numbers");
    m[i] = j[i].get<double>();
  }
  return LorentzMatrix(m);
}

Extremal extremal_from_json(const Json& j) {
  try {
    Extremal e;
    e.tau = map_from_json(j.at("tau"));
    e.mass = j.at("mass").get<double>();
    const Json& c = j.at("com");
    e.com = {c.at(0).get<double>(), c.at(1).get<double>(), c.at(2).get<double>()};
    e.normalizer = j.at("normalizer").get<double>();
    return e;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("extremal: ") + e.what());
  }
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace onofri
