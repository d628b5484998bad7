#include "sinegap/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "sinegap/errors.hpp"

namespace sinegap::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLog2Pi = 1.8378770664093454835606594728112;

// B_2, B_4, ..., B_28.
constexpr std::array<double, 14> kBernoulliEven = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
};

// Below this real part log_gamma shifts upward before applying Stirling.
constexpr double kStirlingThreshold = 10.0;
// log G(z + 1) asymptotics are used once Re z is at least this large.
constexpr double kBarnesAsymptoticThreshold = 12.0;
// Radius of the disk around w = 0 where the Taylor series of log G(1 + w) is used.
constexpr double kTaylorRadius = 0.5;
constexpr int kMaxTaylorShift = 8;
constexpr int kTaylorTerms = 60;

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

void require_finite(Complex v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NumericalError(std::string(what) + ": non-finite result");
  }
}

// eta(k) = sum (-1)^(j-1) / j^k accelerated with Borwein's algorithm 2; the
// truncation error is below 3 / (3 + sqrt 8)^n.
double zeta_borwein(int k) {
  constexpr int n = 40;
  std::array<double, n + 1> d{};
  double term = 1.0 / n;
  double partial = term;
  d[0] = n * partial;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
    partial += term;
    d[i] = n * partial;
  }
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum += sign * (d[j] - d[n]) / std::pow(j + 1.0, k);
  }
  const double eta = -sum / d[n];
  return eta / (1.0 - std::ldexp(1.0, 1 - k));
}

const std::array<double, kTaylorTerms + 1>& zeta_table() {
  static const auto table = [] {
    std::array<double, kTaylorTerms + 1> t{};
    for (int k = 2; k <= kTaylorTerms; ++k) t[k] = zeta_borwein(k);
    return t;
  }();
  return table;
}

Complex stirling_log_gamma(Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv;
  for (int k = 1; k <= 10; ++k) {
    const double b = kBernoulliEven[k - 1];
    series += b / (2.0 * k * (2.0 * k - 1.0)) * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * kLog2Pi + series;
}

// log G(1 + w) for |w| <= 1/2.
Complex taylor_log_barnes(Complex w) {
  const auto& zeta = zeta_table();
  const double euler = constants().euler_gamma;
  Complex sum = 0.5 * w * kLog2Pi - 0.5 * (w + (1.0 + euler) * w * w);
  Complex power = w * w * w;  // w^(k+1) at k = 2
  for (int k = 2; k <= kTaylorTerms; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * zeta[k] / (k + 1.0) * power;
    power *= w;
  }
  return sum;
}

// log G(z + 1) for large |z| with Re z >= kBarnesAsymptoticThreshold.
Complex asymptotic_log_barnes(Complex z) {
  const Complex inv2 = 1.0 / (z * z);
  Complex series = 0.0;
  Complex power = inv2;
  for (int k = 1; k <= 12; ++k) {
    series += kBernoulliEven[k] / (4.0 * k * (k + 1.0)) * power;
    power *= inv2;
  }
  const Complex z2 = z * z;
  return (0.5 * z2 - 1.0 / 12.0) * std::log(z) - 0.75 * z2 + 0.5 * z * kLog2Pi +
         constants().zeta_prime_minus_one + series;
}

}  // namespace

const ConstantTable& constants() noexcept {
  static constexpr ConstantTable table{
      .euler_gamma = 0.57721566490153286060651209008240243,
      .zeta_prime_minus_one = -0.16542114370045092921391966024278064,
      .dyson_constant = std::numbers::ln2 / 3.0 + 3.0 * -0.16542114370045092921391966024278064,
  };
  return table;
}

Complex log_gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw DomainError("log_gamma: pole at z = " + std::to_string(z.real()));
  }
  Complex shift = 0.0;
  while (z.real() < kStirlingThreshold) {
    shift += std::log(z);
    z += 1.0;
  }
  const Complex result = stirling_log_gamma(z) - shift;
  require_finite(result, "log_gamma");
  return result;
}

Complex log_barnes_g(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw DomainError("log_barnes_g: G vanishes at z = " + std::to_string(z.real()));
  }
  const Complex w = z - 1.0;
  const double n = std::round(w.real());
  const Complex w0 = w - n;
  Complex result;
  if (std::abs(w0) <= kTaylorRadius && std::abs(n) <= kMaxTaylorShift) {
    result = taylor_log_barnes(w0);
    // G(y + 1) = Gamma(y) G(y), walked from 1 + w0 to 1 + w.
    const int steps = static_cast<int>(n);
    for (int k = 0; k < steps; ++k) result += log_gamma(1.0 + w0 + double(k));
    for (int k = 1; k <= -steps; ++k) result -= log_gamma(1.0 + w0 - double(k));
  } else {
    Complex y = z;
    Complex shift = 0.0;
    while (y.real() - 1.0 < kBarnesAsymptoticThreshold) {
      shift += log_gamma(y);
      y += 1.0;
    }
    result = asymptotic_log_barnes(y - 1.0) - shift;
  }
  require_finite(result, "log_barnes_g");
  return result;
}

double barnes_pair(double u) {
  if (!std::isfinite(u)) throw DomainError("barnes_pair: non-finite u");
  return 2.0 * log_barnes_g(Complex(1.0, u / (2.0 * kPi))).real();
}

double zeta_int(int k) {
  if (k < 2) throw DomainError("zeta_int: requires k >= 2, got " + std::to_string(k));
  if (k <= kTaylorTerms) return zeta_table()[k];
  return zeta_borwein(k);
}

}  // namespace sinegap::specfun
