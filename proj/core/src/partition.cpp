#include "sinegap/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sinegap/errors.hpp"

namespace sinegap {

IntervalPartition::IntervalPartition(std::vector<double> endpoints, std::optional<double> min_gap)
    : endpoints_(std::move(endpoints)) {
  if (endpoints_.size() < 2) {
    throw DomainError("IntervalPartition: need at least two endpoints (m >= 1)");
  }
  for (double x : endpoints_) {
    if (!std::isfinite(x)) throw DomainError("IntervalPartition: non-finite endpoint");
  }
  for (std::size_t j = 1; j < endpoints_.size(); ++j) {
    if (!(endpoints_[j] > endpoints_[j - 1])) {
      throw DomainError("IntervalPartition: endpoints must be strictly increasing (index " +
                        std::to_string(j) + ")");
    }
  }
  if (min_gap) {
    if (!(*min_gap > 0.0)) throw DomainError("IntervalPartition: declared delta must be positive");
    if (min_spacing() < *min_gap) {
      throw DomainError("IntervalPartition: spacing " + std::to_string(min_spacing()) +
                        " below declared delta " + std::to_string(*min_gap));
    }
  }
}

double IntervalPartition::interval_length(std::size_t k) const {
  if (k < 1 || k > size()) throw DomainError("IntervalPartition: interval index out of range");
  return endpoints_[k] - endpoints_[k - 1];
}

double IntervalPartition::min_spacing() const noexcept {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < endpoints_.size(); ++j) {
    gap = std::min(gap, endpoints_[j] - endpoints_[j - 1]);
  }
  return gap;
}

IntervalPartition IntervalPartition::translated(double shift) const {
  auto x = endpoints_;
  for (double& v : x) v += shift;
  return IntervalPartition(std::move(x));
}

IntervalPartition IntervalPartition::scaled(double factor) const {
  if (!(factor > 0.0)) throw DomainError("IntervalPartition: scale factor must be positive");
  auto x = endpoints_;
  for (double& v : x) v *= factor;
  return IntervalPartition(std::move(x));
}

IntervalPartition IntervalPartition::reflected() const {
  std::vector<double> x(endpoints_.rbegin(), endpoints_.rend());
  for (double& v : x) v = -v;
  return IntervalPartition(std::move(x));
}

IntervalPartition IntervalPartition::merged() const {
  return IntervalPartition({endpoints_.front(), endpoints_.back()});
}

}  // namespace sinegap
