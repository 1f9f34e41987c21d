#ifndef MOELAB_NUMERIC_HPP
#define MOELAB_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace moelab {

/// Exact floating-point accumulator (Shewchuk expansion / fsum).
///
/// Keeps the running sum as a list of non-overlapping partials, so the
/// rounded result is the correctly rounded value of the exact sum. The
/// result therefore does not depend on the order in which values are
/// added, which is what makes full-batch reductions invariant under
/// dataset row permutations.
class ExactSum {
 public:
  void add(double x) {
    std::size_t used = 0;
    for (std::size_t i = 0; i < partials_.size(); ++i) {
      double y = partials_[i];
      if (std::abs(x) < std::abs(y)) {
        const double t = x;
        x = y;
        y = t;
      }
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials_[used++] = lo;
      x = hi;
    }
    partials_.resize(used);
    partials_.push_back(x);
  }

  /// Correctly rounded value of the exact sum (CPython fsum rounding).
  double value() const {
    std::size_t n = partials_.size();
    if (n == 0) return 0.0;
    double hi = partials_[--n];
    double lo = 0.0;
    while (n > 0) {
      const double x = hi;
      const double y = partials_[--n];
      hi = x + y;
      const double yr = hi - x;
      lo = y - yr;
      if (lo != 0.0) break;
    }
    // Round-half-even correction when the discarded tail all points the
    // same way as the last nonzero remainder.
    if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) ||
                  (lo > 0.0 && partials_[n - 1] > 0.0))) {
      const double y = lo * 2.0;
      const double x = hi + y;
      if (y == x - hi) hi = x;
    }
    return hi;
  }

  void reset() { partials_.clear(); }

 private:
  std::vector<double> partials_;
};

/// fsum over a contiguous range.
inline double exact_sum(const double* data, std::size_t n) {
  ExactSum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(data[i]);
  return acc.value();
}

inline double exact_sum(const std::vector<double>& v) {
  return exact_sum(v.data(), v.size());
}

/// log(exp(la) + exp(lb)) without overflow; tolerates -inf inputs.
inline double log_sum_exp(double la, double lb) {
  if (la == -std::numeric_limits<double>::infinity()) return lb;
  if (lb == -std::numeric_limits<double>::infinity()) return la;
  const double m = la > lb ? la : lb;
  return m + std::log1p(std::exp(-(std::abs(la - lb))));
}

inline double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

inline double clamp(double x, double lo, double hi) {
  return x < lo ? lo : (x > hi ? hi : x);
}

/// Ordinary least squares y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LineFit ols_fit(const std::vector<double>& xs,
                       const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n != ys.size() || n < 2)
    throw std::invalid_argument("ols_fit: need >= 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_fit: degenerate x");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (f.intercept + f.slope * xs[i]);
    ss_res += r * r;
  }
  f.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return f;
}

}  // namespace moelab

#endif  // MOELAB_NUMERIC_HPP
