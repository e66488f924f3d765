#pragma once

#include <filesystem>
#include <stdexcept>

#include "json.hpp"
#include "onofri/lorentz.hpp"
#include "onofri/stability.hpp"

namespace onofri {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const GridDescriptor& g);
Json to_json(const HarmonicField& f);
Json to_json(const MobiusMap& m);
Json to_json(const ConformalMap& t);
Json to_json(const LorentzMatrix& l);
Json to_json(const Extremal& e);
Json to_json(const FunctionalReport& r);
Json to_json(const NormalizationResult& r);
Json to_json(const ManifoldPoint& m);
Json to_json(const StabilityReport& r);

GridDescriptor grid_from_json(const Json& j);
HarmonicField field_from_json(const Json& j);
/// Accepts {"a","b","c","d"} as [re, im] pairs with optional "reflect".
/// Entries are stored as given before normalization in `raw_det` when asked.
ConformalMap map_from_json(const Json& j, Complex* raw_det = nullptr);
LorentzMatrix lorentz_from_json(const Json& j);
Extremal extremal_from_json(const Json& j);

Json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace onofri
