#include "sinegap/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sinegap/errors.hpp"
#include "sinegap/fredholm.hpp"
#include "sinegap/parallel.hpp"
#include "sinegap/weights.hpp"

namespace sinegap {
namespace {

constexpr double kImagTolerance = 1e-8;
constexpr double kClampTolerance = 1e-9;

void check_unit_weights(std::span<const double> s, std::size_t m) {
  if (s.size() != m) {
    throw DomainError("expected " + std::to_string(m) + " weights, got " + std::to_string(s.size()));
  }
  for (double v : s) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("thinning weights must lie in [0, 1]");
  }
}

double log_f_at(const IntervalPartition& x, std::vector<double> u, double r, int n) {
  return log_fredholm_det(x, WeightConfiguration::from_jump_exponents(u), r, n).real();
}

}  // namespace

double JointPMF::at(std::span<const int> k) const {
  if (k.size() != max_counts.size()) throw DomainError("JointPMF: index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t d = 0; d < k.size(); ++d) {
    if (k[d] < 0 || k[d] > max_counts[d]) throw DomainError("JointPMF: index out of range");
    flat = flat * (max_counts[d] + 1) + k[d];
  }
  return table[flat];
}

JointPMF joint_pmf(const IntervalPartition& partition, double r, std::span<const int> max_counts,
                   int n_quad, int n_grid_per_dim) {
  const std::size_t m = partition.size();
  if (m > 3) throw DomainError("joint_pmf: at most 3 intervals supported");
  if (max_counts.size() != m) throw DomainError("joint_pmf: need one max count per interval");
  int largest = 0;
  for (int k : max_counts) {
    if (k < 0) throw DomainError("joint_pmf: max counts must be nonnegative");
    largest = std::max(largest, k);
  }
  if (n_grid_per_dim < 2 * largest + 2) {
    throw DomainError("joint_pmf: grid of " + std::to_string(n_grid_per_dim) +
                      " points per dimension is too small (need >= " +
                      std::to_string(2 * largest + 2) + ")");
  }

  const std::size_t grid = static_cast<std::size_t>(n_grid_per_dim);
  std::size_t grid_points = 1;
  for (std::size_t d = 0; d < m; ++d) grid_points *= grid;

  // F on the torus; index digits in base `grid`, last dimension fastest.
  const double step = 2.0 * std::numbers::pi / n_grid_per_dim;
  std::vector<Complex> values(grid_points);
  parallel_for(grid_points, [&](std::size_t g) {
    std::vector<Complex> s(m);
    std::size_t rest = g;
    for (std::size_t d = m; d-- > 0;) {
      s[d] = std::polar(1.0, step * static_cast<double>(rest % grid));
      rest /= grid;
    }
    values[g] = std::exp(log_fredholm_det(partition, WeightConfiguration(std::move(s)), r, n_quad));
  });

  JointPMF pmf;
  pmf.max_counts.assign(max_counts.begin(), max_counts.end());
  std::size_t cells = 1;
  for (int k : max_counts) cells *= static_cast<std::size_t>(k + 1);
  pmf.table.assign(cells, 0.0);

  const double norm = 1.0 / static_cast<double>(grid_points);
  double worst_imag = 0.0;
  std::vector<int> k(m);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::size_t rest = cell;
    for (std::size_t d = m; d-- > 0;) {
      k[d] = static_cast<int>(rest % (max_counts[d] + 1));
      rest /= (max_counts[d] + 1);
    }
    Complex sum = 0.0;
    for (std::size_t g = 0; g < grid_points; ++g) {
      std::size_t digits = g;
      long long phase = 0;
      for (std::size_t d = m; d-- > 0;) {
        phase += static_cast<long long>(k[d]) * static_cast<long long>(digits % grid);
        digits /= grid;
      }
      const double angle = -step * static_cast<double>(phase % static_cast<long long>(grid));
      sum += values[g] * std::polar(1.0, angle);
    }
    sum *= norm;
    worst_imag = std::max(worst_imag, std::abs(sum.imag()));
    double p = sum.real();
    if (p < 0.0) {
      if (p < -kClampTolerance) {
        throw NumericalError("joint_pmf: coefficient " + std::to_string(p) +
                             " is negative beyond roundoff; increase n_quad");
      }
      p = 0.0;
    }
    pmf.table[cell] = p;
  }
  if (worst_imag >= kImagTolerance) {
    throw NumericalError("joint_pmf: imaginary part " + std::to_string(worst_imag) +
                         " in extracted coefficients");
  }
  double mass = 0.0;
  for (double p : pmf.table) mass += p;
  pmf.residual_mass = 1.0 - mass;
  return pmf;
}

double thinned_gap_probability(const IntervalPartition& partition, std::span<const double> s,
                               double r, int n) {
  check_unit_weights(s, partition.size());
  const WeightConfiguration weights(std::vector<double>(s.begin(), s.end()));
  return std::exp(log_fredholm_det(partition, weights, r, n).real());
}

double conditional_zero_probability(const IntervalPartition& partition, std::span<const double> s,
                                    double r, int n) {
  check_unit_weights(s, partition.size());
  const WeightConfiguration weights(std::vector<double>(s.begin(), s.end()));
  const WeightConfiguration gap(std::vector<double>{0.0});
  const int merged_order = n * static_cast<int>(partition.size());
  const double log_gap = log_fredholm_det(partition.merged(), gap, r, merged_order).real();
  const double log_thinned = log_fredholm_det(partition, weights, r, n).real();
  return std::exp(log_gap - log_thinned);
}

StatisticsTriple numerical_cumulants(const IntervalPartition& partition, double r, int order,
                                     double h, int n) {
  if (order < 1 || order > 2) throw DomainError("numerical_cumulants: order must be 1 or 2");
  if (!(h >= 1e-4 && h <= 1e-1)) throw DomainError("numerical_cumulants: h must lie in [1e-4, 1e-1]");
  if (!(r > 0.0)) throw DomainError("numerical_cumulants: r must be positive");
  const std::size_t m = partition.size();

  auto L = [&](std::size_t j, double a, std::size_t k, double b) {
    std::vector<double> u(m, 0.0);
    u[j] += a;
    u[k] += b;
    return log_f_at(partition, std::move(u), r, n);
  };
  auto richardson = [](double coarse, double fine) { return fine + (fine - coarse) / 3.0; };
  auto first = [&](std::size_t j, double step) {
    return (L(j, step, j, 0.0) - L(j, -step, j, 0.0)) / (2.0 * step);
  };
  auto second = [&](std::size_t j, double step, double center) {
    return (L(j, step, j, 0.0) - 2.0 * center + L(j, -step, j, 0.0)) / (step * step);
  };
  auto mixed = [&](std::size_t j, std::size_t k, double step) {
    return (L(j, step, k, step) - L(j, step, k, -step) - L(j, -step, k, step) +
            L(j, -step, k, -step)) /
           (4.0 * step * step);
  };

  StatisticsTriple t;
  t.index.resize(m);
  t.mu.assign(m, 0.0);
  t.sigma2.assign(m, 0.0);
  t.cross.assign(m * m, 0.0);
  for (std::size_t j = 0; j < m; ++j) t.index[j] = j + 1;

  for (std::size_t j = 0; j < m; ++j) t.mu[j] = richardson(first(j, h), first(j, h / 2));
  if (order == 2) {
    const double center = L(0, 0.0, 0, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      t.sigma2[j] = richardson(second(j, h, center), second(j, h / 2, center));
      t.cross[j * m + j] = t.sigma2[j];
    }
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        const double c = richardson(mixed(j, k, h), mixed(j, k, h / 2));
        t.cross[j * m + k] = c;
        t.cross[k * m + j] = c;
      }
    }
  }
  return t;
}

}  // namespace sinegap
