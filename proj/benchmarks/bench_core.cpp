#include <benchmark/benchmark.h>

#include "onemax/bitstring.hpp"
#include "onemax/mutation.hpp"

using namespace onemax;

static void BM_OneMaxEval(benchmark::State& state) {
  Rng rng(1);
  const BitString x = random_bitstring(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(onemax_eval(x));
  }
  state.SetBytesProcessed(state.iterations() * state.range(0) / 8);
}
BENCHMARK(BM_OneMaxEval)->Arg(1'000)->Arg(10'000)->Arg(100'000);

static void BM_ApplyOperator(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto kind = state.range(1) == 0 ? OperatorKind::Shift : OperatorKind::Standard;
  Rng rng(2);
  const BitString x = random_bitstring(n, rng);
  const MutationRate p(1.0 / static_cast<double>(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_operator(kind, x, p, rng));
  }
}
BENCHMARK(BM_ApplyOperator)->Args({10'000, 0})->Args({10'000, 1})->Args({100'000, 0});

static void BM_BinomialSampler(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double p = static_cast<double>(state.range(1)) / static_cast<double>(n);
  Rng rng(3);
  const BinomialSampler s(n, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(s(rng));
  }
}
BENCHMARK(BM_BinomialSampler)->Args({10'000, 1})->Args({10'000, 100})->Args({100'000, 2'500});

static void BM_BinomialSamplerAssign(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  BinomialSampler s;
  double p = 1.0 / static_cast<double>(n);
  for (auto _ : state) {
    s.assign(n, p);
    p = p < 0.25 ? p * 1.5 : 1.0 / static_cast<double>(n);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_BinomialSamplerAssign)->Arg(10'000)->Arg(100'000);

static void BM_SplitFlipSampler(benchmark::State& state) {
  Rng rng(4);
  SplitFlipSampler s;
  s.assign(OperatorKind::Shift, 100, 9'900, 1e-4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(s(rng));
  }
}
BENCHMARK(BM_SplitFlipSampler);
