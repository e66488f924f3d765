#pragma once

#include <functional>
#include <vector>

namespace onofri {

struct SimplexOptions {
  /// Edge length of the initial axis-aligned simplex.
  double initial_step = 0.25;
  /// Converged when max vertex distance from the best vertex is below x_tol
  /// and the spread of vertex values is below f_tol.
  double x_tol = 1e-7;
  double f_tol = 1e-10;
  int max_evaluations = 5000;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  int iterations = 0;
  bool converged = false;
  double diameter = 0.0;
  double spread = 0.0;
};

/// Nelder-Mead minimization with reflection 1, expansion 2, contraction 0.5
/// and shrink 0.5. The objective may return +inf to reject a point.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, const SimplexOptions& options = {});

}  // namespace onofri
