#pragma once

/* Numeric kernels used across the library.
 *
 * Everything that grows exponentially (transfer-operator entries, cylinder
 * sums) is kept in log space.  The spectral radius of a nonnegative matrix is
 * computed by power iteration on log-scaled vectors, with the growth rate
 * averaged over a caller-supplied graph period: patterns that are periodic or
 * split into several irreducible pieces (powers of a periodic transition
 * matrix do) make the raw one-step growth oscillate, while the windowed
 * average still converges geometrically to log rho.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "avedim/common.hpp"

namespace avedim {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Streaming log(sum(exp(x_i))). Two-pass-free: rescales on the fly.
class LogSumExp {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }
  // Merge a finished accumulator; used to combine per-prefix partial sums in
  // a fixed order so reductions are bit-reproducible.
  void merge(const LogSumExp& other) {
    if (other.sum_ == 0.0) return;
    if (other.max_ <= max_) {
      sum_ += other.sum_ * std::exp(other.max_ - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - other.max_) + other.sum_;
      max_ = other.max_;
    }
  }
  double value() const { return sum_ == 0.0 ? kNegInf : max_ + std::log(sum_); }
  bool empty() const { return sum_ == 0.0; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

inline double log_sum_exp_pair(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// log rho of a nonnegative matrix given as log-entries (kNegInf marks zeros).
// `period` must be a multiple of the period of every recurrent piece of the
// pattern; for a pattern contained in A^L with A irreducible of period p,
// p itself works. Relative tolerance is on successive windowed growth rates.
inline double log_spectral_radius(const std::vector<std::vector<double>>& log_entries,
                                  int period,
                                  double rel_tol = 1e-12,
                                  int max_iter = 100000) {
  const int n = static_cast<int>(log_entries.size());
  if (n == 0) throw DomainError("numeric: log_spectral_radius: empty matrix");
  if (period < 1) period = 1;

  std::vector<double> x(n, 0.0), y(n);
  double window_prev = std::numeric_limits<double>::quiet_NaN();
  double window_accum = 0.0;
  int steps_in_window = 0;

  for (int iter = 0; iter < max_iter; ++iter) {
    double step_max = kNegInf;
    for (int i = 0; i < n; ++i) {
      LogSumExp acc;
      const auto& row = log_entries[i];
      for (int j = 0; j < n; ++j) {
        if (row[j] != kNegInf) acc.add(row[j] + x[j]);
      }
      y[i] = acc.value();
      step_max = std::max(step_max, y[i]);
    }
    if (step_max == kNegInf)
      throw DomainError("numeric: log_spectral_radius: matrix has a zero row reachable from the start vector");
    // Normalize so the vector stays near 0; the shift is this step's growth.
    for (int i = 0; i < n; ++i) y[i] -= step_max;
    x.swap(y);
    window_accum += step_max;
    if (++steps_in_window == period) {
      const double growth = window_accum / period;
      if (!std::isnan(window_prev)) {
        const double scale = std::max(1.0, std::abs(growth));
        if (std::abs(growth - window_prev) <= rel_tol * scale) return growth;
      }
      window_prev = growth;
      window_accum = 0.0;
      steps_in_window = 0;
    }
  }
  throw NumericError("numeric: log_spectral_radius: power iteration did not converge within iteration cap");
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
};

// Ordinary least squares y ~ intercept + slope * x.
inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw DomainError("numeric: linear_fit: need >= 2 paired samples");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DomainError("numeric: linear_fit: degenerate abscissae (all x equal)");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
  }
  f.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  f.slope_stderr = n > 2 ? std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx) : 0.0;
  return f;
}

// Euclidean projection of v onto the probability simplex restricted to the
// coordinates marked in `allowed`; disallowed coordinates are forced to 0.
inline void project_to_simplex(std::vector<double>& v, const std::vector<bool>& allowed) {
  std::vector<double> u;
  u.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (allowed[i]) u.push_back(v[i]);
  if (u.empty()) throw DomainError("numeric: project_to_simplex: no allowed coordinates");
  std::sort(u.begin(), u.end(), std::greater<double>());
  double csum = 0.0, theta = 0.0;
  int k = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    csum += u[i];
    const double t = (csum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      theta = t;
      k = static_cast<int>(i + 1);
    }
  }
  (void)k;
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = allowed[i] ? std::max(0.0, v[i] - theta) : 0.0;
}

}  // namespace avedim
