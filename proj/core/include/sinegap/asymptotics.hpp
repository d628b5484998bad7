#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sinegap/partition.hpp"
#include "sinegap/weights.hpp"

namespace sinegap {

/// An asymptotic value of log F split by its r-dependence:
/// total = r_squared_term + r_linear_term + log_r_term + constant_term.
///
/// Terms of the form c * log(r * a) are split as c * log r (log_r_term) plus
/// c * log a (constant_term).
struct ExpansionBreakdown {
  double r_squared_term = 0.0;
  double r_linear_term = 0.0;
  double log_r_term = 0.0;
  double constant_term = 0.0;
  double total = 0.0;
};

/// Means, variances and covariances of counting functions, indexed by `index`
/// (interval endpoints j). `cross` is a full symmetric row-major table over the
/// same indices whose diagonal holds the variances.
struct StatisticsTriple {
  std::vector<std::size_t> index;
  std::vector<double> mu;
  std::vector<double> sigma2;
  std::vector<double> cross;

  std::size_t size() const noexcept { return index.size(); }
  /// Position of endpoint index j in `index`; throws DomainError if absent.
  std::size_t position(std::size_t j) const;
  double mean(std::size_t j) const { return mu[position(j)]; }
  double variance(std::size_t j) const { return sigma2[position(j)]; }
  double covariance(std::size_t j, std::size_t k) const;
};

/// Single gap, s = 0 on (r x0, r x1):
/// -r^2 (x1 - x0)^2 / 8 - (1/4) log(r (x1 - x0)) + (1/3) log 2 + 3 zeta'(-1).
ExpansionBreakdown dyson_gap_log(double r, double x0, double x1);

/// Single interval with s = e^{u1} > 0:
/// r u1 (x1 - x0) / pi + u1^2 / (2 pi^2) log(2 r (x1 - x0)) + 2 barnes_pair(u1).
ExpansionBreakdown basor_widom_log(double r, double x0, double x1, double u1);

/// Large-r expansion of log F(r x, s) with every s_j > 0, in terms of the jump
/// exponents u_j = log(s_j / s_{j+1}), j = 1..m (s_{m+1} = 1).
ExpansionBreakdown thm1_log(const IntervalPartition& partition, std::span<const double> u, double r);

/// Large-r expansion of log F(r x, s) when s_p = 0 and every other weight is
/// positive, in terms of u_j, j in {0..m} \ {p-1, p} (s_0 = s_{m+1} = 1).
ExpansionBreakdown thm2_log(const IntervalPartition& partition, std::size_t p, const GapExponents& u,
                            double r);

/// mu_j = r (x_j - x_0) / pi, sigma_j^2 = log(2 r (x_j - x_0)) / pi^2 and
/// Sigma_jk = log(2 r (x_j - x_0)(x_k - x_0) / |x_k - x_j|) / (2 pi^2), j, k = 1..m.
StatisticsTriple counting_stats(const IntervalPartition& partition, double r);

/// Hatted statistics of the counts conditioned on a gap on (r x_{p-1}, r x_p),
/// for j, k in {0..m} \ {p-1, p}. The cross terms do not depend on r.
StatisticsTriple conditional_stats(const IntervalPartition& partition, std::size_t p, double r);

/// Variance and covariance predictions for the nested counts N(r x_0, r x_j):
/// sigma_j^2(r) + (1 + gamma_E) / pi^2 and Sigma_jk(r) + (1 + gamma_E) / (2 pi^2).
/// `mu` carries the exact means.
StatisticsTriple var_cov_expansion(const IntervalPartition& partition, double r);

}  // namespace sinegap
