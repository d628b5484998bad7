#include "sinegap/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sinegap/errors.hpp"
#include "sinegap/specfun.hpp"

namespace sinegap {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

void check_scale(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("asymptotics: r must be positive");
}

void check_order(double x0, double x1) {
  if (!std::isfinite(x0) || !std::isfinite(x1) || !(x1 > x0)) {
    throw DomainError("asymptotics: need finite x0 < x1");
  }
}

void check_gap_index(const IntervalPartition& partition, std::size_t p) {
  if (p < 1 || p > partition.size()) {
    throw DomainError("asymptotics: p must lie in 1.." + std::to_string(partition.size()));
  }
}

ExpansionBreakdown finish(ExpansionBreakdown b) {
  b.total = b.r_squared_term + b.r_linear_term + b.log_r_term + b.constant_term;
  return b;
}

std::vector<std::size_t> conditional_indices(std::size_t m, std::size_t p) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j <= m; ++j) {
    if (j + 1 != p && j != p) out.push_back(j);
  }
  return out;
}

// sqrt(|x_j - x_p| |x_j - x_{p-1}|)
double gap_distance(const IntervalPartition& x, std::size_t p, std::size_t j) {
  return std::sqrt(std::abs(x[j] - x[p])) * std::sqrt(std::abs(x[j] - x[p - 1]));
}

// The r-free argument of the log in the hatted variance:
// 4 sqrt(|x_j - x_p||x_j - x_{p-1}|) |2 x_j - x_p - x_{p-1}| / (x_p - x_{p-1}).
double conditional_variance_argument(const IntervalPartition& x, std::size_t p, std::size_t j) {
  return 4.0 * std::sqrt(std::abs(x[j] - x[p]) * std::abs(x[j] - x[p - 1])) *
         std::abs(2.0 * x[j] - x[p] - x[p - 1]) / (x[p] - x[p - 1]);
}

// The ratio inside the hatted covariance (and the pairwise terms of the
// one-gap expansion).
double conditional_cross_ratio(const IntervalPartition& x, std::size_t p, std::size_t j,
                               std::size_t k) {
  const double a = std::sqrt(std::abs(x[k] - x[p])) * std::sqrt(std::abs(x[j] - x[p - 1]));
  const double b = std::sqrt(std::abs(x[k] - x[p - 1])) * std::sqrt(std::abs(x[j] - x[p]));
  return (a + b) / std::abs(a - b);
}

StatisticsTriple make_triple(std::vector<std::size_t> index) {
  StatisticsTriple t;
  const std::size_t n = index.size();
  t.index = std::move(index);
  t.mu.assign(n, 0.0);
  t.sigma2.assign(n, 0.0);
  t.cross.assign(n * n, 0.0);
  return t;
}

}  // namespace

std::size_t StatisticsTriple::position(std::size_t j) const {
  for (std::size_t a = 0; a < index.size(); ++a) {
    if (index[a] == j) return a;
  }
  throw DomainError("StatisticsTriple: index " + std::to_string(j) + " not present");
}

double StatisticsTriple::covariance(std::size_t j, std::size_t k) const {
  return cross[position(j) * index.size() + position(k)];
}

ExpansionBreakdown dyson_gap_log(double r, double x0, double x1) {
  check_scale(r);
  check_order(x0, x1);
  const double length = x1 - x0;
  const double c = specfun::constants().dyson_constant;
  ExpansionBreakdown b;
  b.r_squared_term = -r * r * length * length / 8.0;
  b.log_r_term = -0.25 * std::log(r);
  b.constant_term = -0.25 * std::log(length) + c;
  // Evaluated as a function of r (x1 - x0) alone so equal products give equal totals.
  const double scaled = r * length;
  b.total = -scaled * scaled / 8.0 - 0.25 * std::log(scaled) + c;
  return b;
}

ExpansionBreakdown basor_widom_log(double r, double x0, double x1, double u1) {
  check_scale(r);
  check_order(x0, x1);
  if (!std::isfinite(u1)) throw DomainError("basor_widom_log: non-finite u");
  const double length = x1 - x0;
  const double quad = u1 * u1 / (2.0 * kPi2);
  ExpansionBreakdown b;
  b.r_linear_term = u1 / kPi * length * r;
  b.log_r_term = quad * std::log(r);
  const double pair = specfun::barnes_pair(u1);
  b.constant_term = quad * std::log(2.0 * length) + (pair + pair);
  return finish(b);
}

ExpansionBreakdown thm1_log(const IntervalPartition& x, std::span<const double> u, double r) {
  check_scale(r);
  const std::size_t m = x.size();
  if (u.size() != m) {
    throw DomainError("thm1_log: expected " + std::to_string(m) + " exponents, got " +
                      std::to_string(u.size()));
  }
  for (double v : u) {
    if (!std::isfinite(v)) throw DomainError("thm1_log: non-finite exponent");
  }
  const double log_r = std::log(r);
  ExpansionBreakdown b;
  double log_r_coefficient = 0.0;
  double u_sum = 0.0;
  double pairs = 0.0;
  for (std::size_t j = 1; j <= m; ++j) {
    const double uj = u[j - 1];
    const double dj = x[j] - x[0];
    const double quad = uj * uj / (2.0 * kPi2);
    b.r_linear_term += uj / kPi * dj * r;
    log_r_coefficient += quad;
    b.constant_term += quad * std::log(2.0 * dj);
    pairs += specfun::barnes_pair(uj);
    u_sum += uj;
  }
  for (std::size_t j = 1; j <= m; ++j) {
    for (std::size_t k = j + 1; k <= m; ++k) {
      const double coefficient = u[j - 1] * u[k - 1] / (2.0 * kPi2);
      const double dj = x[j] - x[0];
      const double dk = x[k] - x[0];
      log_r_coefficient += coefficient;
      b.constant_term += coefficient * std::log(2.0 * dj * dk / (x[k] - x[j]));
    }
  }
  b.log_r_term = log_r_coefficient * log_r;
  b.constant_term += pairs + specfun::barnes_pair(u_sum);
  return finish(b);
}

ExpansionBreakdown thm2_log(const IntervalPartition& x, std::size_t p, const GapExponents& u,
                            double r) {
  check_scale(r);
  const std::size_t m = x.size();
  check_gap_exponents(m, p, u);
  const ExpansionBreakdown gap_part = dyson_gap_log(r, x[p - 1], x[p]);
  const double log_r = std::log(r);

  // Left of the gap the linear contribution enters with a minus sign, right of
  // it with a plus sign.
  double linear = 0.0;
  double log_r_coefficient = 0.0;
  double constant = 0.0;
  for (const auto& [j, uj] : u) {
    const double distance = gap_distance(x, p, j);
    linear += (j + 1 < p) ? -uj * distance : uj * distance;
    const double quad = uj * uj / (4.0 * kPi2);
    log_r_coefficient += quad;
    constant += quad * std::log(conditional_variance_argument(x, p, j));
    constant += specfun::barnes_pair(uj);
  }
  for (auto it = u.begin(); it != u.end(); ++it) {
    for (auto jt = std::next(it); jt != u.end(); ++jt) {
      const double coefficient = it->second * jt->second / (2.0 * kPi2);
      constant += coefficient * std::log(conditional_cross_ratio(x, p, it->first, jt->first));
    }
  }
  ExpansionBreakdown b;
  b.r_squared_term = gap_part.r_squared_term;
  b.r_linear_term = linear * r / kPi;
  b.log_r_term = gap_part.log_r_term + log_r_coefficient * log_r;
  b.constant_term = gap_part.constant_term + constant;
  b.total = gap_part.total + (b.r_linear_term + log_r_coefficient * log_r + constant);
  return b;
}

StatisticsTriple counting_stats(const IntervalPartition& x, double r) {
  check_scale(r);
  const std::size_t m = x.size();
  std::vector<std::size_t> index(m);
  for (std::size_t j = 1; j <= m; ++j) index[j - 1] = j;
  StatisticsTriple t = make_triple(std::move(index));
  for (std::size_t a = 0; a < m; ++a) {
    const double dj = x[a + 1] - x[0];
    t.mu[a] = r * dj / kPi;
    t.sigma2[a] = std::log(2.0 * r * dj) / kPi2;
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t c = 0; c < m; ++c) {
      if (a == c) {
        t.cross[a * m + c] = t.sigma2[a];
        continue;
      }
      const double dj = x[a + 1] - x[0];
      const double dk = x[c + 1] - x[0];
      t.cross[a * m + c] =
          std::log(2.0 * r * dj * dk / std::abs(x[c + 1] - x[a + 1])) / (2.0 * kPi2);
    }
  }
  return t;
}

StatisticsTriple conditional_stats(const IntervalPartition& x, std::size_t p, double r) {
  check_scale(r);
  check_gap_index(x, p);
  StatisticsTriple t = make_triple(conditional_indices(x.size(), p));
  const std::size_t n = t.size();
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t j = t.index[a];
    t.mu[a] = r / kPi * gap_distance(x, p, j);
    t.sigma2[a] = std::log(conditional_variance_argument(x, p, j) * r) / (2.0 * kPi2);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = 0; c < n; ++c) {
      t.cross[a * n + c] =
          (a == c) ? t.sigma2[a]
                   : std::log(conditional_cross_ratio(x, p, t.index[a], t.index[c])) / (2.0 * kPi2);
    }
  }
  return t;
}

StatisticsTriple var_cov_expansion(const IntervalPartition& x, double r) {
  StatisticsTriple t = counting_stats(x, r);
  const double offset = (1.0 + specfun::constants().euler_gamma) / kPi2;
  const std::size_t n = t.size();
  for (std::size_t a = 0; a < n; ++a) t.sigma2[a] += offset;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = 0; c < n; ++c) {
      t.cross[a * n + c] = (a == c) ? t.sigma2[a] : t.cross[a * n + c] + offset / 2.0;
    }
  }
  return t;
}

}  // namespace sinegap
