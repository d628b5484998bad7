#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sinegap/specfun.hpp"

namespace sinegap {

/// Exponents u_j keyed by j in {0, ..., m} \ {p-1, p} (the one-zero-weight case).
using GapExponents = std::map<std::size_t, double>;

/// The weights s_1, ..., s_m attached to the intervals of a partition, with the
/// boundary convention s_0 = s_{m+1} = 1.
///
/// Two exponent parametrisations are supported and always derived on demand:
///   * all s_j > 0:           u_j = log(s_j / s_{j+1}),  j = 1..m
///   * s_p = 0, others > 0:   u_j = log(s_j / s_{j+1}),  j in {0..m} \ {p-1, p}
/// together with beta_j = u_j / (2 pi i).
class WeightConfiguration {
 public:
  /// Real weights; each must be finite and >= 0.
  explicit WeightConfiguration(std::vector<double> s);
  /// Complex weights, used on the unit torus for coefficient extraction.
  explicit WeightConfiguration(std::vector<Complex> s);

  /// s_j = exp(u_j + ... + u_m).
  static WeightConfiguration from_jump_exponents(std::span<const double> u);
  /// Inverse of gap_exponents(): s_p = 0, s_j for j < p built up from s_0 = 1 and
  /// s_j for j > p built down from s_{m+1} = 1. `u` must be keyed on exactly
  /// {0..m} \ {p-1, p}.
  static WeightConfiguration from_gap_exponents(std::size_t m, std::size_t p, const GapExponents& u);

  std::size_t size() const noexcept { return s_.size(); }
  std::span<const Complex> values() const noexcept { return s_; }
  /// s_k for k = 1..m.
  Complex operator[](std::size_t k) const { return s_.at(k - 1); }

  bool is_real() const noexcept;
  /// Real weights with every s_j >= 0.
  bool is_nonnegative_real() const noexcept;
  std::vector<double> real_values() const;

  /// u_1..u_m; requires every s_j real and positive.
  std::vector<double> jump_exponents() const;
  /// beta_j = u_j / (2 pi i) for the all-positive case.
  std::vector<Complex> jump_betas() const;
  /// Index p (1-based) of the single zero weight, if any.
  std::optional<std::size_t> zero_index() const;
  /// u_j for j in {0..m} \ {p-1, p}; requires s_p = 0 exactly and all other s_j > 0.
  GapExponents gap_exponents(std::size_t p) const;

 private:
  std::vector<Complex> s_;
};

/// Validates that `u` is keyed on exactly {0..m} \ {p-1, p} with finite values.
void check_gap_exponents(std::size_t m, std::size_t p, const GapExponents& u);

}  // namespace sinegap
