#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sinegap/asymptotics.hpp"
#include "sinegap/partition.hpp"
#include "sinegap/quadrature.hpp"

namespace sinegap {

/// P(N_1 = k_1, ..., N_m = k_m) for 0 <= k_j <= K_j, where N_j counts points of
/// the scaled interval (r x_{j-1}, r x_j).
struct JointPMF {
  std::vector<int> max_counts;
  /// Row-major over (k_1, ..., k_m), last index fastest.
  std::vector<double> table;
  /// 1 - sum(table): the probability mass outside the table.
  double residual_mass = 0.0;

  double at(std::span<const int> k) const;
};

/// Extracts the coefficients of F(x, s) = sum P(k) prod s_j^{k_j} by a uniform
/// DFT over the torus s_j = exp(i theta_j). Requires m <= 3 and
/// n_grid_per_dim >= 2 max_j K_j + 2. Imaginary parts above 1e-8 and entries
/// below -1e-9 raise NumericalError; entries in (-1e-9, 0) are clamped to 0.
JointPMF joint_pmf(const IntervalPartition& partition, double r, std::span<const int> max_counts,
                   int n_quad, int n_grid_per_dim);

/// Probability that the thinned process (points on the k-th interval kept with
/// probability 1 - s_k) has no point in (r x_0, r x_m). Requires s in [0, 1]^m.
double thinned_gap_probability(const IntervalPartition& partition, std::span<const double> s,
                               double r, int n = kDefaultNodesPerInterval);

/// P(no point of the original process in (r x_0, r x_m) | the thinned process
/// has none there) = F((x_0, x_m), 0) / F(x, s).
double conditional_zero_probability(const IntervalPartition& partition, std::span<const double> s,
                                    double r, int n = kDefaultNodesPerInterval);

/// Cumulants of the nested counts N(r x_0, r x_j), j = 1..m, from central
/// differences of log F in the jump exponents at u = 0 with one Richardson step
/// (h and h/2). order 1 fills the means; order 2 also the variances and covariances.
/// Requires h in [1e-4, 1e-1].
StatisticsTriple numerical_cumulants(const IntervalPartition& partition, double r, int order,
                                     double h = 1e-3, int n = kDefaultNodesPerInterval);

}  // namespace sinegap
