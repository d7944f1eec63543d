#include <benchmark/benchmark.h>

#include "onemax/algorithms.hpp"

using namespace onemax;

namespace {

AlgorithmConfig config(Variant v, std::size_t n, std::size_t lambda) {
  AlgorithmConfig c;
  c.variant = v;
  c.n = n;
  c.lambda = lambda;
  c.op = default_operator(v);
  return c;
}

}  // namespace

// One generation near the start of a run, where most offspring are worse.
static void BM_Generation(benchmark::State& state) {
  const auto v = static_cast<Variant>(state.range(0));
  const auto lambda = static_cast<std::size_t>(state.range(1));
  Optimizer opt(config(v, 10'000, lambda), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(opt.step());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lambda));
}
BENCHMARK(BM_Generation)
    ->ArgsProduct({{static_cast<int>(Variant::StaticEA), static_cast<int>(Variant::TwoRate),
                    static_cast<int>(Variant::EaAb), static_cast<int>(Variant::ThreeRate)},
                   {10, 1600}});

static void BM_FullRun(benchmark::State& state) {
  const auto v = static_cast<Variant>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_algorithm(config(v, 1'000, 10), ++seed));
  }
}
BENCHMARK(BM_FullRun)
    ->Arg(static_cast<int>(Variant::StaticEA))
    ->Arg(static_cast<int>(Variant::TwoRate))
    ->Arg(static_cast<int>(Variant::EaAb))
    ->Unit(benchmark::kMillisecond);
