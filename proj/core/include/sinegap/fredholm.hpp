#pragma once

#include "sinegap/partition.hpp"
#include "sinegap/quadrature.hpp"
#include "sinegap/specfun.hpp"
#include "sinegap/weights.hpp"

namespace sinegap {

/// sin(x - y) / (pi (x - y)), with the value 1/pi on the diagonal.
double sine_kernel(double x, double y) noexcept;

/// How the weighted operator is discretised.
enum class Assembly {
  /// A_ab = w_b (1 - s_b) K(t_a, t_b). Works for complex weights.
  kColumnWeighted,
  /// A_ab = sqrt(w_a (1 - s_a)) K(t_a, t_b) sqrt(w_b (1 - s_b)); real s in [0, 1] only.
  kSymmetrized,
};

/// Arithmetic used for the Nystrom matrix.
///
/// When 1 - K has an eigenvalue near 0 (long gaps, e.g. a zero weight on an
/// interval of scaled length 20 or more) the double-precision matrix entries
/// alone limit log F to roughly eps ||(I - A)^{-1}||. kAuto evaluates in double and
/// repeats the evaluation with 113-bit floats (nodes, weights, kernel and LU)
/// when the estimated 1-norm of (I - A)^{-1} exceeds kQuadConditionThreshold.
/// Complex weights are always evaluated in double.
enum class Precision { kAuto, kDouble, kQuad };

inline constexpr double kQuadConditionThreshold = 1e3;

/// True when this build can evaluate in 113-bit precision.
bool quad_precision_available() noexcept;

struct DeterminantOptions {
  Assembly assembly = Assembly::kColumnWeighted;
  Precision precision = Precision::kAuto;
};

struct DeterminantResult {
  /// log F, principal argument in (-pi, pi].
  Complex log_f;
  /// Nodes per interval of the reported value.
  int order_used = 0;
  /// |log_f(order) - log_f(order / 2)|.
  double error_estimate = 0.0;
};

/// log det(I - A) of the Nystrom matrix at a single order, without the
/// halving re-run. Building block for fredholm_f and for torus sweeps.
Complex log_fredholm_det(const IntervalPartition& partition, const WeightConfiguration& weights,
                         double r, int n_per_interval, DeterminantOptions options = {});

/// log F(r x, s) = log det(1 - sum_k (1 - s_k) K restricted to (r x_{k-1}, r x_k)).
///
/// Requires n >= 8 nodes per interval; the error estimate comes from a second
/// evaluation at n / 2. For real nonnegative weights the determinant is positive
/// and a NumericalError is raised if the computed argument is not within 1e-9 of 0.
DeterminantResult fredholm_f(const IntervalPartition& partition, const WeightConfiguration& weights,
                             double r, int n = kDefaultNodesPerInterval,
                             DeterminantOptions options = {});

/// Truncated Fredholm series sum_{k <= k_max} (-1)^k / k! int det[K(u_i, u_j)(1 - s(u_j))] du
/// with the k-fold integrals done by tensorised Gauss-Legendre. Independent of
/// the LU path; only valid for small instances:
/// sum_k |1 - s_k| r (x_k - x_{k-1}) / pi < 0.5 and 0 <= k_max <= 3, real weights.
double series_oracle(const IntervalPartition& partition, const WeightConfiguration& weights, double r,
                     int k_max);

}  // namespace sinegap
