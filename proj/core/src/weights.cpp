#include "sinegap/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sinegap/errors.hpp"

namespace sinegap {

WeightConfiguration::WeightConfiguration(std::vector<double> s) {
  if (s.empty()) throw DomainError("WeightConfiguration: need at least one weight");
  s_.reserve(s.size());
  for (double v : s) {
    if (!std::isfinite(v) || v < 0.0) {
      throw DomainError("WeightConfiguration: real weights must be finite and >= 0");
    }
    s_.emplace_back(v, 0.0);
  }
}

WeightConfiguration::WeightConfiguration(std::vector<Complex> s) : s_(std::move(s)) {
  if (s_.empty()) throw DomainError("WeightConfiguration: need at least one weight");
  for (const Complex& v : s_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("WeightConfiguration: non-finite weight");
    }
  }
}

WeightConfiguration WeightConfiguration::from_jump_exponents(std::span<const double> u) {
  if (u.empty()) throw DomainError("from_jump_exponents: need at least one exponent");
  std::vector<double> s(u.size());
  double tail = 0.0;
  for (std::size_t j = u.size(); j-- > 0;) {
    if (!std::isfinite(u[j])) throw DomainError("from_jump_exponents: non-finite exponent");
    tail += u[j];
    s[j] = std::exp(tail);
  }
  return WeightConfiguration(std::move(s));
}

void check_gap_exponents(std::size_t m, std::size_t p, const GapExponents& u) {
  if (m < 1) throw DomainError("gap exponents: m must be >= 1");
  if (p < 1 || p > m) {
    throw DomainError("gap exponents: p must lie in 1.." + std::to_string(m));
  }
  for (const auto& [j, value] : u) {
    if (j > m) throw DomainError("gap exponents: index " + std::to_string(j) + " exceeds m");
    if (j == p - 1 || j == p) {
      throw DomainError("gap exponents: u_" + std::to_string(j) + " is not defined when p = " +
                        std::to_string(p));
    }
    if (!std::isfinite(value)) throw DomainError("gap exponents: non-finite u");
  }
  if (u.size() != m - 1) {
    throw DomainError("gap exponents: expected " + std::to_string(m - 1) +
                      " values (indices {0..m} minus {p-1, p}), got " + std::to_string(u.size()));
  }
}

WeightConfiguration WeightConfiguration::from_gap_exponents(std::size_t m, std::size_t p,
                                                            const GapExponents& u) {
  check_gap_exponents(m, p, u);
  std::vector<double> s(m, 0.0);
  // Left of the gap: s_{j+1} = s_j exp(-u_j), starting from s_0 = 1.
  double left = 1.0;
  for (std::size_t j = 0; j + 1 < p; ++j) {
    left *= std::exp(-u.at(j));
    s[j] = left;  // s_{j+1}
  }
  // Right of the gap: s_j = s_{j+1} exp(u_j), starting from s_{m+1} = 1.
  double right = 1.0;
  for (std::size_t j = m; j > p; --j) {
    right *= std::exp(u.at(j));
    s[j - 1] = right;  // s_j
  }
  return WeightConfiguration(std::move(s));
}

bool WeightConfiguration::is_real() const noexcept {
  return std::all_of(s_.begin(), s_.end(), [](const Complex& v) { return v.imag() == 0.0; });
}

bool WeightConfiguration::is_nonnegative_real() const noexcept {
  return std::all_of(s_.begin(), s_.end(),
                     [](const Complex& v) { return v.imag() == 0.0 && v.real() >= 0.0; });
}

std::vector<double> WeightConfiguration::real_values() const {
  if (!is_real()) throw DomainError("WeightConfiguration: weights are not real");
  std::vector<double> out;
  out.reserve(s_.size());
  for (const Complex& v : s_) out.push_back(v.real());
  return out;
}

std::vector<double> WeightConfiguration::jump_exponents() const {
  const auto s = real_values();
  if (std::any_of(s.begin(), s.end(), [](double v) { return !(v > 0.0); })) {
    throw DomainError("jump_exponents: every weight must be positive");
  }
  std::vector<double> u(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double next = (j + 1 < s.size()) ? s[j + 1] : 1.0;
    u[j] = std::log(s[j] / next);
  }
  return u;
}

std::vector<Complex> WeightConfiguration::jump_betas() const {
  const auto u = jump_exponents();
  std::vector<Complex> beta;
  beta.reserve(u.size());
  for (double v : u) beta.push_back(v / Complex(0.0, 2.0 * std::numbers::pi));
  return beta;
}

std::optional<std::size_t> WeightConfiguration::zero_index() const {
  std::optional<std::size_t> p;
  for (std::size_t k = 0; k < s_.size(); ++k) {
    if (s_[k] == Complex(0.0, 0.0)) {
      if (p) return std::nullopt;
      p = k + 1;
    }
  }
  return p;
}

GapExponents WeightConfiguration::gap_exponents(std::size_t p) const {
  const auto s = real_values();
  const std::size_t m = s.size();
  if (p < 1 || p > m) throw DomainError("gap_exponents: p out of range");
  for (std::size_t k = 1; k <= m; ++k) {
    const double v = s[k - 1];
    if (k == p ? v != 0.0 : !(v > 0.0)) {
      throw DomainError("gap_exponents: need s_p = 0 and every other weight positive");
    }
  }
  // s_0 = s_{m+1} = 1.
  auto weight = [&](std::size_t j) { return (j == 0 || j == m + 1) ? 1.0 : s[j - 1]; };
  GapExponents u;
  for (std::size_t j = 0; j <= m; ++j) {
    if (j == p - 1 || j == p) continue;
    u[j] = std::log(weight(j) / weight(j + 1));
  }
  return u;
}

}  // namespace sinegap
