#pragma once

#include <stdexcept>
#include <string>

namespace sinegap {

/// Invalid input: malformed partitions, out-of-range weights, poles, bad sizes.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The computation itself failed (zero pivot, non-real determinant, inversion
/// producing negative mass, violated oracle precondition).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sinegap
