#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace sinegap {

/// Ordered endpoints x_0 < x_1 < ... < x_m splitting (x_0, x_m) into m intervals.
///
/// Construction validates the ordering; an optional caller-declared minimum gap
/// delta is checked against every pair x_k - x_j (j < k), which reduces to the
/// smallest consecutive spacing.
class IntervalPartition {
 public:
  explicit IntervalPartition(std::vector<double> endpoints,
                             std::optional<double> min_gap = std::nullopt);

  /// Number of intervals m (one less than the number of endpoints).
  std::size_t size() const noexcept { return endpoints_.size() - 1; }
  std::span<const double> endpoints() const noexcept { return endpoints_; }
  double operator[](std::size_t j) const { return endpoints_[j]; }
  double front() const noexcept { return endpoints_.front(); }
  double back() const noexcept { return endpoints_.back(); }

  /// Length of the k-th interval (x_{k-1}, x_k), k = 1..m.
  double interval_length(std::size_t k) const;
  double min_spacing() const noexcept;

  IntervalPartition translated(double shift) const;
  IntervalPartition scaled(double factor) const;
  /// x_j -> -x_{m-j}.
  IntervalPartition reflected() const;
  /// The single interval (x_0, x_m).
  IntervalPartition merged() const;

  friend bool operator==(const IntervalPartition&, const IntervalPartition&) = default;

 private:
  std::vector<double> endpoints_;
};

}  // namespace sinegap
