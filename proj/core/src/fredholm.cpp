#include "sinegap/fredholm.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "lu.hpp"
#include "sinegap/errors.hpp"

namespace sinegap {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRealArgTolerance = 1e-9;

void check_inputs(const IntervalPartition& partition, const WeightConfiguration& weights, double r) {
  if (weights.size() != partition.size()) {
    throw DomainError("fredholm: " + std::to_string(weights.size()) + " weights for " +
                      std::to_string(partition.size()) + " intervals");
  }
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("fredholm: scale r must be positive");
}

#if defined(SINEGAP_HAVE_QUADMATH)
using Quad = __float128;
inline Quad real_sin(Quad v) { return sinq(v); }
inline Quad real_sqrt(Quad v) { return sqrtq(v); }
#endif
inline double real_sin(double v) { return std::sin(v); }
inline double real_sqrt(double v) { return std::sqrt(v); }

template <typename Real>
std::pair<Real, Real> legendre_with_derivative(int n, Real x) {
  Real p0 = 1;
  Real p1 = x;
  for (int k = 2; k <= n; ++k) {
    const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1)};
}

// Composite Gauss-Legendre nodes and weights held in the working precision.
template <typename Real>
struct WorkingRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
  std::vector<std::size_t> interval_of;
};

template <typename Real>
WorkingRule<Real> working_rule(const IntervalPartition& partition, double r, int n) {
  const CompositeRule rule(partition, r, n);
  WorkingRule<Real> out;
  out.interval_of.assign(rule.interval_of().begin(), rule.interval_of().end());
  if constexpr (std::is_same_v<Real, double>) {
    out.nodes.assign(rule.nodes().begin(), rule.nodes().end());
    out.weights.assign(rule.weights().begin(), rule.weights().end());
  } else {
    // Polish the double nodes of the base rule by Newton steps in Real and map
    // them with Real arithmetic.
    const QuadratureRule base = gauss_legendre(n);
    std::vector<Real> x(n), w(n);
    for (int i = 0; i < n; ++i) {
      Real t = base.nodes[i];
      Real dp = 0;
      for (int iter = 0; iter < 3; ++iter) {
        const auto [p, d] = legendre_with_derivative<Real>(n, t);
        if (iter < 2) t -= p / d;
        dp = d;
      }
      x[i] = t;
      w[i] = 2 / ((1 - t * t) * dp * dp);
    }
    for (std::size_t k = 0; k < partition.size(); ++k) {
      const Real a = Real(r) * Real(partition[k]);
      const Real b = Real(r) * Real(partition[k + 1]);
      const Real mid = (a + b) / 2;
      const Real half = (b - a) / 2;
      for (int i = 0; i < n; ++i) {
        out.nodes.push_back(mid + half * x[i]);
        out.weights.push_back(half * w[i]);
      }
    }
  }
  return out;
}

template <typename Real>
Real kernel(Real x, Real y) {
  if constexpr (std::is_same_v<Real, double>) {
    return sine_kernel(x, y);
  } else {
    // Off the diagonal |x - y| is at least a node spacing.
    const Real d = x - y;
    static const Real pi = 4 * atanq(Real(1));
    if (d == 0) return 1 / pi;
    return real_sin(d) / (pi * d);
  }
}

struct RealLogDet {
  detail::LogDet log_det;
  /// Estimate of ||(I - A)^{-1}||_1, or 0 when not requested.
  double inverse_norm = 0.0;
};

template <typename Real>
RealLogDet real_log_det(const IntervalPartition& partition, const std::vector<double>& s, double r,
                        int n, Assembly assembly, bool estimate_conditioning) {
  const auto rule = working_rule<Real>(partition, r, n);
  const std::size_t size = rule.nodes.size();
  std::vector<Real> left(size), right(size);
  for (std::size_t b = 0; b < size; ++b) {
    const Real one_minus_s = Real(1.0 - s[rule.interval_of[b]]);
    if (assembly == Assembly::kSymmetrized) {
      left[b] = right[b] = real_sqrt(rule.weights[b] * one_minus_s);
    } else {
      left[b] = 1;
      right[b] = rule.weights[b] * one_minus_s;
    }
  }
  std::vector<Real> m(size * size);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      m[a * size + b] = (a == b ? Real(1) : Real(0)) -
                        left[a] * kernel<Real>(rule.nodes[a], rule.nodes[b]) * right[b];
    }
  }
  const detail::LuFactors<Real> lu(std::move(m), size);
  RealLogDet out{lu.log_det(), 0.0};
  if (estimate_conditioning) out.inverse_norm = lu.inverse_norm1_estimate();
  return out;
}

detail::LogDet complex_log_det(const IntervalPartition& partition,
                               const WeightConfiguration& weights, double r, int n) {
  const CompositeRule rule(partition, r, n);
  const std::size_t size = rule.size();
  const auto t = rule.nodes();
  const auto w = rule.weights();
  const auto idx = rule.interval_of();
  std::vector<Complex> m(size * size);
  for (std::size_t b = 0; b < size; ++b) {
    const Complex column = w[b] * (1.0 - weights.values()[idx[b]]);
    for (std::size_t a = 0; a < size; ++a) {
      m[a * size + b] = (a == b ? 1.0 : 0.0) - column * sine_kernel(t[a], t[b]);
    }
  }
  return detail::LuFactors<Complex>(std::move(m), size).log_det();
}

Complex checked_log_det(const IntervalPartition& partition, const WeightConfiguration& weights,
                        double r, int n, DeterminantOptions options) {
  detail::LogDet ld;
  if (weights.is_real()) {
    const auto s = weights.real_values();
    if (options.assembly == Assembly::kSymmetrized) {
      for (double v : s) {
        if (v < 0.0 || v > 1.0) throw DomainError("symmetrized assembly needs real s in [0, 1]");
      }
    }
    bool quad = options.precision == Precision::kQuad;
    if (!quad) {
      const bool automatic = options.precision == Precision::kAuto && quad_precision_available();
      const RealLogDet result = real_log_det<double>(partition, s, r, n, options.assembly, automatic);
      ld = result.log_det;
      quad = automatic && result.inverse_norm > kQuadConditionThreshold;
    }
    if (quad) {
#if defined(SINEGAP_HAVE_QUADMATH)
      ld = real_log_det<Quad>(partition, s, r, n, options.assembly, false).log_det;
#else
      throw DomainError("fredholm: quad precision is not available in this build");
#endif
    }
  } else {
    if (options.assembly == Assembly::kSymmetrized) {
      throw DomainError("symmetrized assembly needs real weights");
    }
    ld = complex_log_det(partition, weights, r, n);
  }
  const double arg = detail::fold_angle(ld.arg);
  if (weights.is_nonnegative_real() && std::abs(arg) > kRealArgTolerance) {
    throw NumericalError("fredholm: determinant with nonnegative weights came out non-positive "
                         "(argument " + std::to_string(arg) + "); increase n");
  }
  return {ld.log_abs, weights.is_nonnegative_real() ? 0.0 : arg};
}

// det of the k x k matrix [K(u_i, u_j)], k <= 3.
double kernel_det(std::span<const double> u) {
  const std::size_t k = u.size();
  std::array<double, 9> a{};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i * k + j] = sine_kernel(u[i], u[j]);
  }
  switch (k) {
    case 1:
      return a[0];
    case 2:
      return a[0] * a[3] - a[1] * a[2];
    default:
      return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
             a[2] * (a[3] * a[7] - a[4] * a[6]);
  }
}

}  // namespace

double sine_kernel(double x, double y) noexcept {
  const double d = x - y;
  if (std::abs(d) < 1e-8) return (1.0 - d * d / 6.0) / kPi;
  return std::sin(d) / (kPi * d);
}

bool quad_precision_available() noexcept {
#if defined(SINEGAP_HAVE_QUADMATH)
  return true;
#else
  return false;
#endif
}

Complex log_fredholm_det(const IntervalPartition& partition, const WeightConfiguration& weights,
                         double r, int n_per_interval, DeterminantOptions options) {
  check_inputs(partition, weights, r);
  if (n_per_interval < 4) throw DomainError("fredholm: need at least 4 nodes per interval");
  return checked_log_det(partition, weights, r, n_per_interval, options);
}

DeterminantResult fredholm_f(const IntervalPartition& partition, const WeightConfiguration& weights,
                             double r, int n, DeterminantOptions options) {
  check_inputs(partition, weights, r);
  if (n < 8) throw DomainError("fredholm_f: need n >= 8 nodes per interval");
  DeterminantResult result;
  result.log_f = checked_log_det(partition, weights, r, n, options);
  result.order_used = n;
  const Complex coarse = checked_log_det(partition, weights, r, n / 2, options);
  result.error_estimate = std::abs(result.log_f - coarse);
  return result;
}

double series_oracle(const IntervalPartition& partition, const WeightConfiguration& weights, double r,
                     int k_max) {
  check_inputs(partition, weights, r);
  if (k_max < 0 || k_max > 3) throw DomainError("series_oracle: k_max must lie in 0..3");
  const auto s = weights.real_values();
  double trace = 0.0;
  for (std::size_t k = 1; k <= partition.size(); ++k) {
    trace += std::abs(1.0 - s[k - 1]) * r * partition.interval_length(k) / kPi;
  }
  if (!(trace < 0.5)) {
    throw DomainError("series_oracle: weighted trace " + std::to_string(trace) +
                      " violates the small-instance precondition (< 0.5)");
  }

  const CompositeRule rule(partition, r, 16);
  const std::size_t n = rule.size();
  const auto t = rule.nodes();
  std::vector<double> mass(n);
  for (std::size_t a = 0; a < n; ++a) {
    mass[a] = rule.weights()[a] * (1.0 - s[rule.interval_of()[a]]);
  }

  double total = 1.0;
  if (k_max >= 1) {
    double term = 0.0;
    for (std::size_t a = 0; a < n; ++a) term += mass[a] * sine_kernel(t[a], t[a]);
    total -= term;
  }
  if (k_max >= 2) {
    double term = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const std::array<double, 2> u{t[a], t[b]};
        term += mass[a] * mass[b] * kernel_det(u);
      }
    }
    total += term / 2.0;
  }
  if (k_max >= 3) {
    double term = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          const std::array<double, 3> u{t[a], t[b], t[c]};
          term += mass[a] * mass[b] * mass[c] * kernel_det(u);
        }
      }
    }
    total -= term / 6.0;
  }
  return total;
}

}  // namespace sinegap
