#include "onofri/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace onofri {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<double> affine(const std::vector<double>& c, const std::vector<double>& x, double t) {
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] + t * (x[i] - c[i]);
  return out;
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, const SimplexOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty start point");
  SimplexResult out;
  auto eval = [&](const std::vector<double>& x) {
    ++out.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<Vertex> s;
  s.push_back({x0, eval(x0)});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = x0;
    x[i] += options.initial_step;
    s.push_back({x, eval(x)});
  }
  auto order = [&] {
    std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };

  for (;;) {
    order();
    out.diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i) out.diameter = std::max(out.diameter, distance(s[i].x, s[0].x));
    out.spread = s[n].f - s[0].f;
    if (std::isfinite(s[n].f) && out.diameter < options.x_tol && out.spread < options.f_tol) {
      out.converged = true;
      break;
    }
    if (out.evaluations >= options.max_evaluations) break;
    ++out.iterations;

    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) c[k] += s[i].x[k] / static_cast<double>(n);
    }
    const std::vector<double> xr = affine(c, s[n].x, -1.0);
    const double fr = eval(xr);
    if (fr < s[0].f) {
      const std::vector<double> xe = affine(c, s[n].x, -2.0);
      const double fe = eval(xe);
      s[n] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < s[n - 1].f) {
      s[n] = {xr, fr};
      continue;
    }
    // Outside contraction when the reflected point beats the worst vertex,
    // inside contraction otherwise.
    const bool outside = fr < s[n].f;
    const std::vector<double> xc = affine(c, outside ? xr : s[n].x, 0.5);
    const double fc = eval(xc);
    if (fc < (outside ? fr : s[n].f)) {
      s[n] = {xc, fc};
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      s[i].x = affine(s[0].x, s[i].x, 0.5);
      s[i].f = eval(s[i].x);
    }
  }
  out.x = s[0].x;
  out.value = s[0].f;
  return out;
}

}  // namespace onofri
