#include <benchmark/benchmark.h>

#include "mfhxa/estimation_config.hpp"
#include "mfhxa/generators.hpp"
#include "mfhxa/kernels.hpp"

namespace {

const std::pair<mfhxa::TimeSeries, mfhxa::TimeSeries>& levels() {
  static const auto pair = [] {
    const auto [x, y] = mfhxa::generate_arfima_pair(0.3, 0.1, 0.5, 10000, 2000, 10000, 1);
    return std::make_pair(mfhxa::cumulative_levels(x), mfhxa::cumulative_levels(y));
  }();
  return pair;
}

void BM_GridReference(benchmark::State& state) {
  const auto& [x, y] = levels();
  const auto q = mfhxa::q_range(0.5, 0.5 * static_cast<double>(state.range(0)), 0.5);
  for (auto _ : state) {
    auto g = mfhxa::reference::covariance_grid(x, y, q, 1, 100, mfhxa::TrendFilter::constant);
    benchmark::DoNotOptimize(g);
  }
  state.counters["threads"] = 1;
}

void BM_GridParallel(benchmark::State& state) {
  const auto& [x, y] = levels();
  const auto q = mfhxa::q_range(0.5, 0.5 * static_cast<double>(state.range(0)), 0.5);
  for (auto _ : state) {
    auto g = mfhxa::covariance_grid(x, y, q, 1, 100, mfhxa::TrendFilter::constant);
    benchmark::DoNotOptimize(g);
  }
  state.counters["threads"] = mfhxa::kernel_threads();
}

void BM_ArfimaPair(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto p = mfhxa::generate_arfima_pair(0.3, 0.1, 0.5, n, 2000, n, 1);
    benchmark::DoNotOptimize(p);
  }
}

}  // namespace

BENCHMARK(BM_GridReference)->Arg(3)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Arg(3)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ArfimaPair)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
