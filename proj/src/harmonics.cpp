#include "onofri/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "onofri/parallel.hpp"

namespace onofri {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_nonnegative(int l_max) {
  if (l_max < 0) throw std::invalid_argument("HarmonicField: l_max must be >= 0");
}

struct TrigTable {
  // cos(m phi_j), sin(m phi_j) stored as [m * n + j].
  std::vector<double> cos_mp;
  std::vector<double> sin_mp;
  int n = 0;

  TrigTable(int l_max, const std::vector<double>& phi) : n(static_cast<int>(phi.size())) {
    cos_mp.resize(static_cast<std::size_t>(l_max + 1) * n);
    sin_mp.resize(cos_mp.size());
    for (int m = 0; m <= l_max; ++m) {
      for (int j = 0; j < n; ++j) {
        const double a = m * phi[j];
        cos_mp[static_cast<std::size_t>(m) * n + j] = std::cos(a);
        sin_mp[static_cast<std::size_t>(m) * n + j] = std::sin(a);
      }
    }
  }
};

}  // namespace

HarmonicField::HarmonicField(int l_max) : l_max_(l_max) {
  require_nonnegative(l_max);
  coeffs_.assign(size_for(l_max), 0.0);
}

HarmonicField::HarmonicField(int l_max, std::vector<double> coeffs)
    : l_max_(l_max), coeffs_(std::move(coeffs)) {
  require_nonnegative(l_max);
  if (coeffs_.size() != size_for(l_max)) {
    throw std::invalid_argument("HarmonicField: expected " + std::to_string(size_for(l_max)) +
                                " coefficients for l_max " + std::to_string(l_max) + ", got " +
                                std::to_string(coeffs_.size()));
  }
}

HarmonicField HarmonicField::resized(int l_max) const {
  HarmonicField out(l_max);
  const std::size_t n = std::min(out.coeffs_.size(), coeffs_.size());
  std::copy_n(coeffs_.begin(), n, out.coeffs_.begin());
  return out;
}

HarmonicField& HarmonicField::operator+=(const HarmonicField& other) {
  if (other.l_max_ > l_max_) *this = resized(other.l_max_);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

HarmonicField& HarmonicField::operator-=(const HarmonicField& other) {
  if (other.l_max_ > l_max_) *this = resized(other.l_max_);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

HarmonicField& HarmonicField::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

HarmonicField operator+(HarmonicField a, const HarmonicField& b) { return a += b; }
HarmonicField operator-(HarmonicField a, const HarmonicField& b) { return a -= b; }
HarmonicField operator*(double s, HarmonicField a) { return a *= s; }

GridField::GridField(const SphericalGrid& grid, std::vector<double> samples)
    : grid_(&grid), samples_(std::move(samples)) {
  if (samples_.size() != grid.size()) {
    throw std::invalid_argument("GridField: sample count does not match node count");
  }
}

LegendreTable::LegendreTable(int l_max) : l_max_(l_max) {
  require_nonnegative(l_max);
  const std::size_t n = tri(l_max, l_max) + 1;
  a_.assign(n, 0.0);
  b_.assign(n, 0.0);
  values_.assign(n, 0.0);
  diag_.assign(l_max + 1, 1.0);
  sub_.assign(l_max + 1, 0.0);
  for (int m = 0; m <= l_max; ++m) {
    if (m > 0) diag_[m] = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    sub_[m] = std::sqrt(2.0 * m + 3.0);
    for (int l = m + 2; l <= l_max; ++l) {
      const double lm2 = static_cast<double>(l) * l - static_cast<double>(m) * m;
      const double a = std::sqrt((4.0 * l * l - 1.0) / lm2);
      const double l1 = l - 1.0;
      const double a_prev = std::sqrt((4.0 * l1 * l1 - 1.0) / (l1 * l1 - static_cast<double>(m) * m));
      a_[tri(l, m)] = a;
      b_[tri(l, m)] = a / a_prev;
    }
  }
}

void LegendreTable::evaluate(double x, double s) {
  values_[0] = 1.0;
  double pmm = 1.0;
  for (int m = 0; m <= l_max_; ++m) {
    if (m > 0) {
      pmm *= diag_[m] * s;
      values_[tri(m, m)] = pmm;
    }
    if (m + 1 <= l_max_) values_[tri(m + 1, m)] = sub_[m] * x * pmm;
    for (int l = m + 2; l <= l_max_; ++l) {
      const std::size_t k = tri(l, m);
      values_[k] = a_[k] * x * values_[tri(l - 1, m)] - b_[k] * values_[tri(l - 2, m)];
    }
  }
}

double real_harmonic(int l, int m, const Point3& w) {
  if (l < 0 || std::abs(m) > l) throw std::invalid_argument("real_harmonic: need |m| <= l");
  HarmonicField f(l);
  f.coeff(l, m) = 1.0;
  return evaluate(f, w);
}

namespace {

// Coefficients rearranged in the table's (l, m >= 0) order, with the sqrt(2)
// of the m > 0 basis functions folded in.
struct PackedField {
  int l_max;
  std::vector<double> cos_part, sin_part;

  explicit PackedField(const HarmonicField& f) : l_max(f.l_max()) {
    const std::size_t n = static_cast<std::size_t>((l_max + 1) * (l_max + 2) / 2);
    cos_part.assign(n, 0.0);
    sin_part.assign(n, 0.0);
    std::size_t k = 0;
    for (int l = 0; l <= l_max; ++l) {
      for (int m = 0; m <= l; ++m, ++k) {
        cos_part[k] = m == 0 ? f.coeff(l, 0) : kSqrt2 * f.coeff(l, m);
        sin_part[k] = m == 0 ? 0.0 : kSqrt2 * f.coeff(l, -m);
      }
    }
  }
};

double evaluate_with(const PackedField& f, const Point3& w, LegendreTable& table,
                     std::vector<double>& a, std::vector<double>& b) {
  const int L = f.l_max;
  const double s = std::hypot(w.w1(), w.w2());
  table.evaluate(w.w3(), s);
  a.assign(L + 1, 0.0);
  b.assign(L + 1, 0.0);
  std::size_t k = 0;
  for (int l = 0; l <= L; ++l) {
    for (int m = 0; m <= l; ++m, ++k) {
      a[m] += f.cos_part[k] * table(l, m);
      b[m] += f.sin_part[k] * table(l, m);
    }
  }
  // cos(m phi), sin(m phi) by repeated rotation.
  const double c1 = s > 0.0 ? w.w1() / s : 1.0;
  const double s1 = s > 0.0 ? w.w2() / s : 0.0;
  double cm = 1.0, sm = 0.0, sum = a[0];
  for (int m = 1; m <= L; ++m) {
    const double c = cm * c1 - sm * s1;
    sm = sm * c1 + cm * s1;
    cm = c;
    sum += a[m] * cm + b[m] * sm;
  }
  return sum;
}

}  // namespace

double evaluate(const HarmonicField& f, const Point3& w) {
  LegendreTable table(f.l_max());
  std::vector<double> a, b;
  return evaluate_with(PackedField(f), w, table, a, b);
}

std::vector<double> evaluate(const HarmonicField& f, std::span<const Point3> points) {
  std::vector<double> out(points.size());
  const PackedField packed(f);
  if (max_jobs() <= 1) {
    LegendreTable table(f.l_max());
    std::vector<double> a, b;
    for (std::size_t i = 0; i < points.size(); ++i) {
      out[i] = evaluate_with(packed, points[i], table, a, b);
    }
    return out;
  }
  parallel_for(points.size(), [&](std::size_t i) {
    thread_local LegendreTable table(0);
    thread_local std::vector<double> a, b;
    if (table.l_max() != f.l_max()) table = LegendreTable(f.l_max());
    out[i] = evaluate_with(packed, points[i], table, a, b);
  });
  return out;
}

GridField synthesize(const HarmonicField& f, const SphericalGrid& grid) {
  const int L = f.l_max();
  if (grid.band_limit_exact() < L) {
    throw std::invalid_argument("synthesize: grid band " + std::to_string(grid.band_limit_exact()) +
                                " below field l_max " + std::to_string(L));
  }
  const int nt = grid.theta_count();
  const int np = grid.phi_count();
  const TrigTable trig(L, grid.phi());
  std::vector<double> samples(grid.size());

  auto ring = [&](std::size_t i, LegendreTable& table, std::vector<double>& a,
                  std::vector<double>& b) {
    table.evaluate(grid.cos_theta()[i], grid.sin_theta()[i]);
    for (int m = 0; m <= L; ++m) {
      double am = 0.0, bm = 0.0;
      for (int l = m; l <= L; ++l) {
        am += f.coeff(l, m) * table(l, m);
        if (m > 0) bm += f.coeff(l, -m) * table(l, m);
      }
      a[m] = m == 0 ? am : kSqrt2 * am;
      b[m] = kSqrt2 * bm;
    }
    double* out = samples.data() + i * static_cast<std::size_t>(np);
    for (int j = 0; j < np; ++j) {
      double v = a[0];
      for (int m = 1; m <= L; ++m) {
        const std::size_t k = static_cast<std::size_t>(m) * np + j;
        v += a[m] * trig.cos_mp[k] + b[m] * trig.sin_mp[k];
      }
      out[j] = v;
    }
  };

  if (max_jobs() <= 1) {
    LegendreTable table(L);
    std::vector<double> a(L + 1), b(L + 1);
    for (int i = 0; i < nt; ++i) ring(i, table, a, b);
  } else {
    parallel_for(
        static_cast<std::size_t>(nt),
        [&](std::size_t i) {
          LegendreTable table(L);
          std::vector<double> a(L + 1), b(L + 1);
          ring(i, table, a, b);
        },
        2);
  }
  return GridField(grid, std::move(samples));
}

HarmonicField analyze(const GridField& g, int l_max) {
  require_nonnegative(l_max);
  const SphericalGrid& grid = g.grid();
  if (grid.band_limit_exact() < 2 * l_max) {
    throw std::invalid_argument("analyze: grid band " + std::to_string(grid.band_limit_exact()) +
                                " below 2 * l_max = " + std::to_string(2 * l_max));
  }
  const int L = l_max;
  const int nt = grid.theta_count();
  const int np = grid.phi_count();
  const TrigTable trig(L, grid.phi());
  const std::vector<double>& f = g.samples();

  // Per-ring contributions are formed independently and accumulated in ring
  // order, so the result does not depend on the job count.
  const std::size_t ncoef = HarmonicField::size_for(L);
  std::vector<double> contrib(static_cast<std::size_t>(nt) * ncoef, 0.0);

  auto ring = [&](std::size_t i, LegendreTable& table, std::vector<double>& cm,
                  std::vector<double>& sm) {
    const double* row = f.data() + i * static_cast<std::size_t>(np);
    for (int m = 0; m <= L; ++m) {
      double c = 0.0, s = 0.0;
      for (int j = 0; j < np; ++j) {
        const std::size_t k = static_cast<std::size_t>(m) * np + j;
        c += row[j] * trig.cos_mp[k];
        s += row[j] * trig.sin_mp[k];
      }
      cm[m] = c;
      sm[m] = s;
    }
    table.evaluate(grid.cos_theta()[i], grid.sin_theta()[i]);
    const double w = grid.ring_weights()[i] / np;
    double* out = contrib.data() + i * ncoef;
    for (int l = 0; l <= L; ++l) {
      out[HarmonicField::index(l, 0)] = w * table(l, 0) * cm[0];
      for (int m = 1; m <= l; ++m) {
        const double p = kSqrt2 * w * table(l, m);
        out[HarmonicField::index(l, m)] = p * cm[m];
        out[HarmonicField::index(l, -m)] = p * sm[m];
      }
    }
  };

  if (max_jobs() <= 1) {
    LegendreTable table(L);
    std::vector<double> cm(L + 1), sm(L + 1);
    for (int i = 0; i < nt; ++i) ring(i, table, cm, sm);
  } else {
    parallel_for(
        static_cast<std::size_t>(nt),
        [&](std::size_t i) {
          LegendreTable table(L);
          std::vector<double> cm(L + 1), sm(L + 1);
          ring(i, table, cm, sm);
        },
        2);
  }

  HarmonicField out(L);
  auto coeffs = out.coeffs();
  for (int i = 0; i < nt; ++i) {
    const double* row = contrib.data() + static_cast<std::size_t>(i) * ncoef;
    for (std::size_t k = 0; k < ncoef; ++k) coeffs[k] += row[k];
  }
  return out;
}

double dirichlet_energy(const HarmonicField& f) {
  double e = 0.0;
  for (int l = 1; l <= f.l_max(); ++l) {
    double s = 0.0;
    for (int m = -l; m <= l; ++m) s += f.coeff(l, m) * f.coeff(l, m);
    e += l * (l + 1.0) * s;
  }
  return e;
}

HarmonicField laplacian(const HarmonicField& f) {
  HarmonicField out = f;
  for (int l = 0; l <= f.l_max(); ++l) {
    const double mult = -l * (l + 1.0);
    for (int m = -l; m <= l; ++m) out.coeff(l, m) *= mult;
  }
  return out;
}

double nonconstant_norm2(const HarmonicField& f) {
  double s = 0.0;
  for (std::size_t k = 1; k < f.coeffs().size(); ++k) s += f.coeffs()[k] * f.coeffs()[k];
  return s;
}

}  // namespace onofri
