#include "sinegap/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sinegap/errors.hpp"

namespace sinegap {
namespace {

constexpr int kMaxOrder = 2048;

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > kMaxOrder) {
    throw DomainError("gauss_legendre: order must lie in [1, 2048], got " + std::to_string(n));
  }
  QuadratureRule rule;
  rule.order = n;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  if (n == 1) {
    rule.weights[0] = 2.0;
    return rule;
  }

  // Roots in (0, 1) only; the negative half is mirrored so symmetry is exact.
  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    // Newton to 1e-14, then one polishing step.
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, d] = legendre_with_derivative(n, x);
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) <= 1e-14) break;
    }
    const auto [p, d] = legendre_with_derivative(n, x);
    x -= p / d;
    const double dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) {
    const auto [p, d] = legendre_with_derivative(n, 0.0);
    (void)p;
    rule.nodes[half] = 0.0;
    rule.weights[half] = 2.0 / (d * d);
  }
  return rule;
}

CompositeRule::CompositeRule(const IntervalPartition& partition, double scale, int n_per_interval)
    : n_per_interval_(n_per_interval) {
  if (n_per_interval < 4) throw DomainError("composite_rule: need at least 4 nodes per interval");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("composite_rule: scale must be positive and finite");
  }
  const QuadratureRule base = gauss_legendre(n_per_interval);
  const std::size_t m = partition.size();
  nodes_.reserve(m * n_per_interval);
  weights_.reserve(m * n_per_interval);
  interval_of_.reserve(m * n_per_interval);
  offsets_.reserve(m + 1);
  offsets_.push_back(0);
  for (std::size_t k = 0; k < m; ++k) {
    const double a = scale * partition[k];
    const double b = scale * partition[k + 1];
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < n_per_interval; ++i) {
      nodes_.push_back(mid + half * base.nodes[i]);
      weights_.push_back(half * base.weights[i]);
      interval_of_.push_back(k);
    }
    offsets_.push_back(nodes_.size());
  }
}

std::span<const double> CompositeRule::interval_nodes(std::size_t k) const {
  return std::span<const double>(nodes_).subspan(offsets_.at(k), offsets_.at(k + 1) - offsets_[k]);
}

std::span<const double> CompositeRule::interval_weights(std::size_t k) const {
  return std::span<const double>(weights_).subspan(offsets_.at(k),
                                                   offsets_.at(k + 1) - offsets_[k]);
}

CompositeRule composite_rule(const IntervalPartition& partition, double scale, int n_per_interval) {
  return CompositeRule(partition, scale, n_per_interval);
}

}  // namespace sinegap
