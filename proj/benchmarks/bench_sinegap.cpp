#include <benchmark/benchmark.h>

#include <array>
#include <vector>

#include "sinegap/sinegap.hpp"

namespace {

using sinegap::IntervalPartition;
using sinegap::WeightConfiguration;

void BM_GaussLegendre(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sinegap::gauss_legendre(n));
}
BENCHMARK(BM_GaussLegendre)->RangeMultiplier(4)->Range(16, 1024);

void BM_LogBarnesG(benchmark::State& state) {
  sinegap::Complex z(0.5, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sinegap::specfun::log_barnes_g(z));
    z += sinegap::Complex(0.0, 0.01);
  }
}
BENCHMARK(BM_LogBarnesG);

void BM_BarnesPair(benchmark::State& state) {
  double u = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sinegap::specfun::barnes_pair(u));
    u = u > 2.0 ? -2.0 : u + 1e-3;
  }
}
BENCHMARK(BM_BarnesPair);

void BM_FredholmDouble(benchmark::State& state) {
  const IntervalPartition x({0.0, 0.7, 1.2});
  const WeightConfiguration w(std::vector<double>{0.3329, 0.0907});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sinegap::log_fredholm_det(x, w, 20.0, n, {sinegap::Assembly::kColumnWeighted, sinegap::Precision::kDouble}));
  }
  state.SetComplexityN(2 * n);
}
BENCHMARK(BM_FredholmDouble)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

void BM_FredholmQuad(benchmark::State& state) {
  if (!sinegap::quad_precision_available()) {
    state.SkipWithError("quad precision not built");
    return;
  }
  const IntervalPartition x({0.0, 0.5, 1.1, 1.7});
  const auto w = WeightConfiguration::from_gap_exponents(3, 2, {{0, 0.8}, {3, -1.32}});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sinegap::log_fredholm_det(x, w, 20.0, n, {sinegap::Assembly::kColumnWeighted, sinegap::Precision::kQuad}));
  }
}
BENCHMARK(BM_FredholmQuad)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FredholmF(benchmark::State& state) {
  const IntervalPartition x({0.0, 0.5, 1.1, 1.7});
  const auto w = WeightConfiguration::from_gap_exponents(3, 2, {{0, 0.8}, {3, -1.32}});
  const double r = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sinegap::fredholm_f(x, w, r));
}
BENCHMARK(BM_FredholmF)->Arg(5)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_JointPmf(benchmark::State& state) {
  const IntervalPartition x({0.0, 0.4, 1.0});
  const std::array<int, 2> k_max{6, 6};
  for (auto _ : state) benchmark::DoNotOptimize(sinegap::joint_pmf(x, 3.0, k_max, 32, 14));
}
BENCHMARK(BM_JointPmf)->Unit(benchmark::kMillisecond);

void BM_Thm2Log(benchmark::State& state) {
  const IntervalPartition x({0.0, 0.5, 1.1, 1.7});
  const sinegap::GapExponents u{{0, 0.8}, {3, -1.32}};
  for (auto _ : state) benchmark::DoNotOptimize(sinegap::thm2_log(x, 2, u, 20.0));
}
BENCHMARK(BM_Thm2Log);

}  // namespace

BENCHMARK_MAIN();
