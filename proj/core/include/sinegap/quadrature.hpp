#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sinegap/partition.hpp"

namespace sinegap {

/// n-point Gauss-Legendre rule on [-1, 1]; nodes increasing, exactly symmetric.
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Throws DomainError unless 1 <= n <= 2048.
QuadratureRule gauss_legendre(int n);

/// A base rule mapped affinely onto every interval (r x_{k-1}, r x_k) of a
/// partition. Nodes are stored interval by interval; `interval_of` gives the
/// zero-based interval index of each global node.
class CompositeRule {
 public:
  CompositeRule(const IntervalPartition& partition, double scale, int n_per_interval);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t interval_count() const noexcept { return offsets_.size() - 1; }
  int nodes_per_interval() const noexcept { return n_per_interval_; }

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const std::size_t> interval_of() const noexcept { return interval_of_; }

  std::span<const double> interval_nodes(std::size_t k) const;
  std::span<const double> interval_weights(std::size_t k) const;

 private:
  int n_per_interval_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<std::size_t> interval_of_;
  std::vector<std::size_t> offsets_;
};

/// Requires n_per_interval >= 4 and scale > 0.
CompositeRule composite_rule(const IntervalPartition& partition, double scale, int n_per_interval);

inline constexpr int kDefaultNodesPerInterval = 64;

}  // namespace sinegap
