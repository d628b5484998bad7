#pragma once

#include <complex>

namespace sinegap {

using Complex = std::complex<double>;

namespace specfun {

/// Mathematical constants entering the constant terms of the gap expansions.
struct ConstantTable {
  double euler_gamma;
  /// zeta'(-1), fixed by the Glaisher-Kinkelin relation zeta'(-1) = 1/12 - log A.
  double zeta_prime_minus_one;
  /// (1/3) log 2 + 3 zeta'(-1), the constant of the single-gap expansion.
  double dyson_constant;
};

const ConstantTable& constants() noexcept;

/// log Gamma(z), continued analytically from the positive real axis with the
/// branch cut on (-inf, 0]. Real for real z > 0; satisfies
/// log_gamma(z + 1) = log_gamma(z) + log(z) exactly off the cut.
/// Throws DomainError at z = 0, -1, -2, ...
Complex log_gamma(Complex z);

/// log G(z) for Barnes' G-function, same branch convention as log_gamma, so that
/// log_barnes_g(z + 1) = log_gamma(z) + log_barnes_g(z).
/// Throws DomainError at the zeros z = 0, -1, -2, ...
Complex log_barnes_g(Complex z);

/// log[G(1 + u/(2 pi i)) G(1 - u/(2 pi i))] for real u. The two factors are
/// complex conjugates, so the value is 2 Re log G(1 + i u / (2 pi)).
double barnes_pair(double u);

/// Riemann zeta at an integer k >= 2. Throws DomainError for k < 2.
double zeta_int(int k);

}  // namespace specfun
}  // namespace sinegap
