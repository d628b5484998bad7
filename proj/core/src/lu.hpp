#pragma once

// Dense LU with partial pivoting that reports log|det| and arg(det) separately,
// so determinants far below the double range (exp(-r^2/8)) stay representable.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "sinegap/errors.hpp"

#if defined(SINEGAP_HAVE_QUADMATH)
#include <quadmath.h>
#endif

namespace sinegap::detail {

struct LogDet {
  double log_abs = 0.0;
  /// Sum of pivot arguments and pi per row exchange, not yet folded.
  double arg = 0.0;
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
inline double argument(double v) { return v < 0.0 ? std::numbers::pi : 0.0; }
inline double argument(const std::complex<double>& v) { return std::arg(v); }

#if defined(SINEGAP_HAVE_QUADMATH)
inline double magnitude(__float128 v) { return static_cast<double>(fabsq(v)); }
inline double argument(__float128 v) { return v < 0 ? std::numbers::pi : 0.0; }
#endif

/// Row-major n x n factors PA = LU with unit L stored below the diagonal.
template <typename T>
class LuFactors {
 public:
  /// Throws NumericalError on an exactly zero pivot.
  LuFactors(std::vector<T> a, std::size_t n) : a_(std::move(a)), n_(n), perm_(n) {
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t pivot = k;
      double best = magnitude(a_[k * n + k]);
      for (std::size_t i = k + 1; i < n; ++i) {
        const double v = magnitude(a_[i * n + k]);
        if (v > best) {
          best = v;
          pivot = i;
        }
      }
      if (best == 0.0) throw NumericalError("LU: exactly zero pivot (increase n or check input)");
      if (pivot != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a_[k * n + j], a_[pivot * n + j]);
        std::swap(perm_[k], perm_[pivot]);
        log_det_.arg += std::numbers::pi;
      }
      const T diag = a_[k * n + k];
      log_det_.log_abs += std::log(best);
      log_det_.arg += argument(diag);
      const T* row_k = &a_[k * n];
      for (std::size_t i = k + 1; i < n; ++i) {
        T* row_i = &a_[i * n];
        const T factor = row_i[k] / diag;
        row_i[k] = factor;
        if (factor == T(0)) continue;
        for (std::size_t j = k + 1; j < n; ++j) row_i[j] -= factor * row_k[j];
      }
    }
  }

  const LogDet& log_det() const noexcept { return log_det_; }

  /// Solves A x = b.
  std::vector<T> solve(const std::vector<T>& b) const {
    std::vector<T> x(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      T v = b[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) v -= a_[i * n_ + j] * x[j];
      x[i] = v;
    }
    for (std::size_t i = n_; i-- > 0;) {
      T v = x[i];
      for (std::size_t j = i + 1; j < n_; ++j) v -= a_[i * n_ + j] * x[j];
      x[i] = v / a_[i * n_ + i];
    }
    return x;
  }

  /// Solves A^T x = b.
  std::vector<T> solve_transposed(const std::vector<T>& b) const {
    std::vector<T> y(b);
    for (std::size_t i = 0; i < n_; ++i) {
      T v = y[i];
      for (std::size_t j = 0; j < i; ++j) v -= a_[j * n_ + i] * y[j];
      y[i] = v / a_[i * n_ + i];
    }
    for (std::size_t i = n_; i-- > 0;) {
      T v = y[i];
      for (std::size_t j = i + 1; j < n_; ++j) v -= a_[j * n_ + i] * y[j];
      y[i] = v;
    }
    std::vector<T> x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = y[i];
    return x;
  }

  /// Hager's lower estimate of ||A^{-1}||_1 for real T, usually within a small
  /// factor of the true norm.
  double inverse_norm1_estimate() const {
    std::vector<T> x(n_, T(1) / T(static_cast<double>(n_)));
    double estimate = 0.0;
    std::size_t last = n_;
    for (int iter = 0; iter < 5; ++iter) {
      const std::vector<T> y = solve(x);
      estimate = 0.0;
      for (const T& v : y) estimate += magnitude(v);
      std::vector<T> sign(n_);
      for (std::size_t i = 0; i < n_; ++i) sign[i] = (y[i] < T(0)) ? T(-1) : T(1);
      const std::vector<T> z = solve_transposed(sign);
      std::size_t j = 0;
      double z_max = 0.0;
      double z_dot_x = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        const double v = magnitude(z[i]);
        if (v > z_max) {
          z_max = v;
          j = i;
        }
        z_dot_x += static_cast<double>(z[i] * x[i]);
      }
      if (z_max <= z_dot_x || j == last) break;
      std::fill(x.begin(), x.end(), T(0));
      x[j] = T(1);
      last = j;
    }
    return estimate;
  }

 private:
  std::vector<T> a_;
  std::size_t n_;
  std::vector<std::size_t> perm_;
  LogDet log_det_;
};

/// Folds an angle into (-pi, pi].
inline double fold_angle(double theta) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(theta, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

}  // namespace sinegap::detail
