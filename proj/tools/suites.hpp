#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "onofri/io.hpp"

namespace onofri::cli {

struct RunConfig {
  int grid_band = 72;
  double oversample = 1.0;
  int l_max = 32;
  std::uint64_t seed = 0;
  int jobs = 1;
  double alpha = 2.0 / 3.0;
  /// From ONOFRI_TOL_SCALE; multiplies every tolerance.
  double tol_scale = 1.0;

  double tol(double base) const { return base * tol_scale; }
  Json to_json() const;
};

struct Row {
  std::string suite;
  std::string check;
  double value = 0.0;
  double expected = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return residual <= tolerance; }
};

const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws std::invalid_argument
/// for an unknown name.
std::vector<Row> run_suite(const std::string& name, const RunConfig& config);

}  // namespace onofri::cli
