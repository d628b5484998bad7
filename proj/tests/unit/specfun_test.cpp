#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "oracles.hpp"
#include "sinegap/errors.hpp"
#include "sinegap/specfun.hpp"

namespace sinegap {
namespace {

using specfun::barnes_pair;
using specfun::constants;
using specfun::log_barnes_g;
using specfun::log_gamma;
using specfun::zeta_int;

constexpr double kPi = std::numbers::pi;

TEST(ConstantTable, RangesAndDysonDefinition) {
  const auto& c = constants();
  EXPECT_GT(c.euler_gamma, 0.577);
  EXPECT_LT(c.euler_gamma, 0.578);
  EXPECT_GT(c.zeta_prime_minus_one, -0.166);
  EXPECT_LT(c.zeta_prime_minus_one, -0.165);
  EXPECT_EQ(c.dyson_constant, std::log(2.0) / 3.0 + 3.0 * c.zeta_prime_minus_one);
  EXPECT_NEAR(c.dyson_constant, -0.26521437091470435, 1e-14);
}

TEST(ConstantTable, EulerGammaMatchesHarmonicLimit) {
  EXPECT_NEAR(constants().euler_gamma, testing::euler_gamma_limit(), 1e-10);
}

TEST(ConstantTable, ZetaPrimeMinusOneMatchesGlaisherLimit) {
  EXPECT_NEAR(constants().zeta_prime_minus_one, 1.0 / 12.0 - testing::glaisher_log_a(), 1e-10);
}

TEST(LogGamma, ClosedForms) {
  EXPECT_NEAR(std::abs(log_gamma(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(0.5).real(), 0.5723649429247001, 1e-14);
  EXPECT_NEAR(log_gamma(0.5).imag(), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(5.0).real(), std::log(24.0), 1e-14);
}

TEST(LogGamma, MatchesEulerProduct) {
  for (const Complex z : {Complex(1.0, 1.0), Complex(0.3, -2.0), Complex(2.5, 4.0)}) {
    const Complex expected = std::exp(testing::euler_product_log_gamma(z));
    const Complex got = std::exp(log_gamma(z));
    EXPECT_LT(std::abs(got - expected) / std::abs(expected), 1e-12) << z;
  }
}

TEST(LogGamma, MatchesStdLgammaOnRealAxis) {
  for (double x = 0.05; x < 30.0; x *= 1.37) {
    EXPECT_NEAR(log_gamma(x).real(), std::lgamma(x), 1e-13 * std::max(1.0, std::abs(std::lgamma(x))))
        << x;
  }
}

TEST(LogGamma, ExpMatchesTgammaOnNegativeAxis) {
  for (double x : {-0.5, -1.3, -2.7, -4.2}) {
    const Complex value = std::exp(log_gamma(x));
    EXPECT_NEAR(value.real(), std::tgamma(x), 1e-13 * std::abs(std::tgamma(x))) << x;
    EXPECT_NEAR(value.imag(), 0.0, 1e-12 * std::abs(std::tgamma(x))) << x;
  }
}

TEST(LogGamma, ConjugateSymmetry) {
  for (const Complex z : {Complex(0.2, 0.7), Complex(3.0, -5.0), Complex(-2.5, 1.5)}) {
    const Complex a = log_gamma(std::conj(z));
    const Complex b = std::conj(log_gamma(z));
    EXPECT_NEAR(a.real(), b.real(), 1e-13);
    EXPECT_NEAR(a.imag(), b.imag(), 1e-13);
  }
}

TEST(LogGamma, PolesThrow) {
  EXPECT_THROW(log_gamma(0.0), DomainError);
  EXPECT_THROW(log_gamma(-3.0), DomainError);
  EXPECT_NO_THROW(log_gamma(Complex(-3.0, 1e-6)));
}

TEST(LogBarnesG, SmallIntegers) {
  EXPECT_NEAR(std::abs(log_barnes_g(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(log_barnes_g(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(log_barnes_g(3.0).real(), 0.0, 1e-14);
  EXPECT_NEAR(log_barnes_g(4.0).real(), std::log(2.0), 1e-14);
  EXPECT_NEAR(log_barnes_g(6.0).real(), std::log(288.0), 1e-13);
}

TEST(LogBarnesG, RecursionOnStrip) {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const Complex z(0.5 + 2.5 * i / 9.0, -5.0 + 10.0 * j / 9.0);
      const Complex residual = log_barnes_g(z + 1.0) - log_gamma(z) - log_barnes_g(z);
      worst = std::max(worst, std::abs(residual));
    }
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(LogBarnesG, IntegralIdentity) {
  const double log_two_pi = std::log(2.0 * kPi);
  for (const Complex z : {Complex(0.3, 0.0), Complex(0.0, 0.7), Complex(1.0, 0.5)}) {
    const std::function<Complex(double)> integrand = [&](double t) {
      return z * log_gamma(1.0 + z * t);
    };
    const Complex lhs = testing::adaptive_simpson(integrand, 0.0, 1.0, 1e-13);
    const Complex rhs =
        z / 2.0 * log_two_pi - z * (z + 1.0) / 2.0 + z * log_gamma(z + 1.0) - log_barnes_g(z + 1.0);
    EXPECT_LT(std::abs(lhs - rhs), 1e-9) << z;
  }
}

TEST(LogBarnesG, ConjugateSymmetry) {
  for (const Complex z : {Complex(0.9, 0.2), Complex(2.0, -3.0), Complex(-1.5, 0.7), Complex(1.0, 7.0)}) {
    const Complex a = log_barnes_g(std::conj(z));
    const Complex b = std::conj(log_barnes_g(z));
    EXPECT_NEAR(a.real(), b.real(), 1e-12) << z;
    EXPECT_NEAR(a.imag(), b.imag(), 1e-12) << z;
  }
}

TEST(LogBarnesG, ReferenceValues) {
  EXPECT_NEAR(log_barnes_g(0.5).real(), -0.50543305448969538, 1e-13);
  EXPECT_NEAR(log_barnes_g(-0.5).real(), -1.7709451779743408, 1e-13);
  EXPECT_NEAR(std::exp(log_barnes_g(-0.5)).real(), -0.17017206989656152, 1e-14);
  EXPECT_NEAR(log_barnes_g(10.5).real(), 42.278883636795052, 1e-11);
}

TEST(LogBarnesG, ZerosThrow) {
  EXPECT_THROW(log_barnes_g(0.0), DomainError);
  EXPECT_THROW(log_barnes_g(-2.0), DomainError);
}

TEST(BarnesPair, ZeroAndSymmetry) {
  EXPECT_EQ(barnes_pair(0.0), 0.0);
  for (double u : {0.5, 2.4}) EXPECT_NEAR(barnes_pair(u), barnes_pair(-u), 1e-15);
}

TEST(BarnesPair, MatchesDigammaQuadrature) {
  const double gamma = testing::euler_gamma_limit();
  for (double u : {-1.1, 0.5, 2.4, -3.92}) {
    EXPECT_NEAR(barnes_pair(u), testing::barnes_pair_by_quadrature(u, gamma), 1e-10) << u;
  }
}

TEST(BarnesPair, SmallArgumentSeries) {
  // log|G(1+it)|^2 = (1+gamma) t^2 - zeta(3) t^4 / 2 + O(t^6).
  const double u = -1.1;
  const double t = u / (2.0 * kPi);
  EXPECT_GT(barnes_pair(u), 0.0);
  EXPECT_NEAR(barnes_pair(u),
              (1.0 + constants().euler_gamma) * t * t - zeta_int(3) * std::pow(t, 4) / 2.0,
              2.0 * zeta_int(5) * std::pow(t, 6) / 3.0 + 1e-15);
  EXPECT_NEAR(barnes_pair(-1.1), 0.0477862484332531, 1e-13);
}

TEST(BarnesPair, NonFiniteThrows) {
  EXPECT_THROW(barnes_pair(std::nan("")), DomainError);
}

TEST(ZetaInt, ClosedForms) {
  EXPECT_NEAR(zeta_int(2), kPi * kPi / 6.0, 1e-15);
  EXPECT_NEAR(zeta_int(4), std::pow(kPi, 4) / 90.0, 1e-15);
  EXPECT_NEAR(zeta_int(6), std::pow(kPi, 6) / 945.0, 1e-15);
}

TEST(ZetaInt, MatchesEulerMaclaurin) {
  EXPECT_NEAR(zeta_int(3), testing::zeta3_euler_maclaurin(), 1e-14);
}

TEST(ZetaInt, LargeOrderApproachesOne) {
  EXPECT_NEAR(zeta_int(60), 1.0, 1e-17);
  EXPECT_NEAR(zeta_int(20), 1.0 + std::pow(2.0, -20) + std::pow(3.0, -20) + std::pow(4.0, -20) + std::pow(5.0, -20),
              1e-15);
}

TEST(ZetaInt, RejectsSmallOrder) {
  EXPECT_THROW(zeta_int(1), DomainError);
  EXPECT_THROW(zeta_int(-4), DomainError);
}

}  // namespace
}  // namespace sinegap
