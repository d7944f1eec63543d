#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "onemax/algorithms.hpp"
#include "oracles.hpp"

using namespace onemax;

namespace {

AlgorithmConfig make(Variant v, std::size_t n, std::size_t lambda,
                     PMinRule rule = PMinRule::OverN) {
  AlgorithmConfig c;
  c.variant = v;
  c.n = n;
  c.lambda = lambda;
  c.op = default_operator(v);
  c.p_min_rule = rule;
  return c;
}

std::vector<Fitness> fits(std::initializer_list<std::size_t> values) {
  std::vector<Fitness> out;
  for (auto v : values) {
    out.push_back(Fitness{v});
  }
  return out;
}

}  // namespace

TEST(AlgorithmConfig, DefaultsAndValidation) {
  const AlgorithmConfig c;
  EXPECT_EQ(c.r_init, 2.0);
  EXPECT_EQ(c.increase_factor, 2.0);
  EXPECT_EQ(c.decrease_factor, 0.5);
  EXPECT_EQ(c.success_ratio, 0.05);
  EXPECT_EQ(c.three_rate_low, 0.7);
  EXPECT_EQ(c.three_rate_high, 1.4);
  EXPECT_NO_THROW(c.validate());

  auto bad = [](auto mutate) {
    AlgorithmConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(bad([](auto& c) { c.lambda = 0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.n = 0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.increase_factor = 1.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.decrease_factor = 1.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.decrease_factor = 0.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.success_ratio = 0.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.success_ratio = 1.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.three_rate_low = 1.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.three_rate_high = 1.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.p_static = 0.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(Optimizer(bad([](auto& c) { c.lambda = 0; }), 1), std::invalid_argument);
}

TEST(AlgorithmConfig, BoundsPerRule) {
  auto c = make(Variant::TwoRate, 10'000, 10);
  EXPECT_DOUBLE_EQ(c.p_min(), 1e-4);
  EXPECT_DOUBLE_EQ(c.r_min(), 2.0);
  EXPECT_DOUBLE_EQ(c.r_max(), 2500.0);
  c.p_min_rule = PMinRule::OverNSquared;
  EXPECT_DOUBLE_EQ(c.p_min(), 1e-8);
  EXPECT_DOUBLE_EQ(c.r_min(), 2e-4);
  // The halved rate bottoms out at exactly 1/n^2.
  EXPECT_DOUBLE_EQ(c.r_min() * c.two_rate_low / 10'000.0, c.p_min());
}

TEST(AlgorithmConfig, SuccessThresholdIsCeiling) {
  auto c = make(Variant::EaAb, 100, 100);
  EXPECT_EQ(c.success_threshold(), 5U);
  c.lambda = 10;
  EXPECT_EQ(c.success_threshold(), 1U);
  c.lambda = 3200;
  EXPECT_EQ(c.success_threshold(), 160U);
  c.lambda = 1;
  EXPECT_EQ(c.success_threshold(), 1U);
  c.lambda = 60;  // 0.05 * 60 is 3.0000000000000004 in binary floating point
  EXPECT_EQ(c.success_threshold(), 3U);
}

TEST(SubpopulationSizes, FloorArithmetic) {
  using A = std::array<std::size_t, 3>;
  EXPECT_EQ(subpopulation_sizes(make(Variant::ThreeRate, 10, 3)), (A{1, 1, 1}));
  EXPECT_EQ(subpopulation_sizes(make(Variant::ThreeRate, 10, 1600)), (A{533, 533, 534}));
  EXPECT_EQ(subpopulation_sizes(make(Variant::ThreeRate, 10, 2)), (A{0, 1, 1}));
  EXPECT_EQ(subpopulation_sizes(make(Variant::TwoRate, 10, 11)), (A{5, 0, 6}));
  EXPECT_EQ(subpopulation_sizes(make(Variant::TwoRate, 10, 1)), (A{0, 0, 1}));
  EXPECT_EQ(subpopulation_sizes(make(Variant::StaticEA, 10, 7)), (A{0, 7, 0}));
  EXPECT_EQ(subpopulation_sizes(make(Variant::EaAb, 10, 7)), (A{0, 7, 0}));
}

TEST(SelectBest, UniqueMaximumAndSingleton) {
  Rng rng(1);
  const Rng before = rng;
  EXPECT_EQ(select_best(fits({1, 5, 3}), rng), 1U);
  EXPECT_EQ(select_best(fits({4}), rng), 0U);
  EXPECT_EQ(rng, before);
  EXPECT_THROW(select_best(std::span<const Fitness>{}, rng), std::invalid_argument);
}

TEST(SelectBest, TiesAreUniform) {
  constexpr std::uint64_t trials = 300'000;
  Rng rng(2);
  const auto f = fits({2, 2, 2});
  std::array<std::uint64_t, 3> hits{};
  for (std::uint64_t t = 0; t < trials; ++t) {
    ++hits[select_best(f, rng)];
  }
  for (auto h : hits) {
    EXPECT_TRUE(oracle::within_sigmas(h, trials, 1.0 / 3.0)) << h;
  }
  // Ties among a subset only ever pick from that subset.
  const auto g = fits({1, 7, 3, 7, 7, 0});
  std::map<std::size_t, std::uint64_t> picks;
  for (std::uint64_t t = 0; t < 30'000; ++t) {
    ++picks[select_best(g, rng)];
  }
  EXPECT_EQ(picks.size(), 3U);
  EXPECT_TRUE(picks.count(1) && picks.count(3) && picks.count(4));
}

TEST(TwoRateUpdate, FollowsWinnerThreeQuartersOfTheTime) {
  constexpr std::uint64_t trials = 1'000'000;
  const auto c = make(Variant::TwoRate, 10'000, 10);
  Rng rng(3);
  const double r = 64.0;
  std::uint64_t up = 0;
  std::uint64_t down = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    up += two_rate_update(r, RateChoice::High, rng, c) == 2 * r ? 1 : 0;
    down += two_rate_update(r, RateChoice::Low, rng, c) == r / 2 ? 1 : 0;
  }
  EXPECT_TRUE(oracle::within_sigmas(up, trials, 0.75)) << up;
  EXPECT_TRUE(oracle::within_sigmas(down, trials, 0.75)) << down;
  EXPECT_THROW(two_rate_update(r, RateChoice::Mid, rng, c), std::invalid_argument);
}

TEST(TwoRateUpdate, Clamps) {
  Rng rng(4);
  const auto c = make(Variant::TwoRate, 10'000, 10);
  const auto c2 = make(Variant::TwoRate, 10'000, 10, PMinRule::OverNSquared);
  for (int t = 0; t < 1000; ++t) {
    const double lo = two_rate_update(c.r_min(), RateChoice::Low, rng, c);
    EXPECT_TRUE(lo == c.r_min() || lo == 2 * c.r_min());
    const double hi = two_rate_update(c.r_max(), RateChoice::High, rng, c);
    EXPECT_TRUE(hi == c.r_max() || hi == c.r_max() / 2);
    const double lo2 = two_rate_update(c2.r_min(), RateChoice::Low, rng, c2);
    EXPECT_GE(lo2, c2.r_min());
  }
}

TEST(ThreeRateUpdate, DirectionFrequencies) {
  constexpr std::uint64_t trials = 1'000'000;
  const auto c = make(Variant::ThreeRate, 10'000, 1600);
  Rng rng(5);
  const double r = 50.0;
  std::uint64_t stay = 0;
  std::uint64_t low = 0;
  std::uint64_t high = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double mid = three_rate_update(r, RateChoice::Mid, rng, c);
    stay += mid == r ? 1 : 0;
    low += mid == r * c.three_rate_low ? 1 : 0;
    high += three_rate_update(r, RateChoice::High, rng, c) == r * c.three_rate_high ? 1 : 0;
  }
  EXPECT_TRUE(oracle::within_sigmas(stay, trials, 0.5));
  EXPECT_TRUE(oracle::within_sigmas(low, trials, 0.25));
  EXPECT_TRUE(oracle::within_sigmas(high, trials, 0.75));
}

TEST(AbUpdate, HandExamples) {
  auto c = make(Variant::EaAb, 10'000, 100);
  EXPECT_DOUBLE_EQ(ab_update(0.01, 5, c), 0.02);
  EXPECT_DOUBLE_EQ(ab_update(0.01, 4, c), 0.005);
  EXPECT_DOUBLE_EQ(ab_update(0.5, 100, c), 0.5);
  EXPECT_DOUBLE_EQ(ab_update(1.5e-4, 0, c), 1e-4);
  c.p_min_rule = PMinRule::OverNSquared;
  EXPECT_DOUBLE_EQ(ab_update(1.5e-8, 0, c), 1e-8);
}

TEST(Optimizer, InvariantsHoldEveryGeneration) {
  struct Case {
    Variant v;
    PMinRule rule;
    OperatorKind op;
  };
  for (const Case k : {Case{Variant::StaticEA, PMinRule::OverN, OperatorKind::Shift},
                       Case{Variant::StaticEA, PMinRule::OverN, OperatorKind::Standard},
                       Case{Variant::TwoRate, PMinRule::OverN, OperatorKind::Shift},
                       Case{Variant::TwoRate, PMinRule::OverNSquared, OperatorKind::Shift},
                       Case{Variant::EaAb, PMinRule::OverN, OperatorKind::Shift},
                       Case{Variant::EaAb, PMinRule::OverNSquared, OperatorKind::Shift},
                       Case{Variant::ThreeRate, PMinRule::OverN, OperatorKind::Standard},
                       Case{Variant::ThreeRate, PMinRule::OverNSquared, OperatorKind::Shift}}) {
    for (std::size_t lambda : {1U, 2U, 3U, 7U, 40U}) {
      // With a single offspring (2-rate) or fewer than three (3-rate) the low
      // subpopulation is empty and r only drifts upward; see SingleOffspringTwoRate.
      if ((k.v == Variant::TwoRate && lambda < 2) || (k.v == Variant::ThreeRate && lambda < 3)) {
        continue;
      }
      auto c = make(k.v, 200, lambda, k.rule);
      c.op = k.op;
      Optimizer opt(c, 1000 + lambda);
      std::size_t prev = opt.fitness().value;
      while (!opt.at_optimum() && opt.generation() < 50'000) {
        const auto& out = opt.step();
        const auto f = opt.offspring_fitness();
        ASSERT_EQ(out.best_fitness, *std::max_element(f.begin(), f.end()));
        ASSERT_EQ(out.accepted, out.best_fitness.value >= prev);
        ASSERT_GE(opt.fitness().value, prev);
        ASSERT_EQ(opt.fitness().value, out.accepted ? out.best_fitness.value : prev);
        prev = opt.fitness().value;
        if (k.v == Variant::TwoRate || k.v == Variant::ThreeRate) {
          ASSERT_GE(opt.rate_numerator(), c.r_min());
          ASSERT_LE(opt.rate_numerator(), c.r_max());
        }
        if (k.v == Variant::EaAb) {
          ASSERT_GE(opt.mutation_rate(), c.p_min());
          ASSERT_LE(opt.mutation_rate(), 0.5);
        }
        if (opt.generation() % 97 == 0) {
          ASSERT_TRUE(opt.consistent());
          ASSERT_EQ(onemax_eval(opt.parent()), opt.fitness());
        }
      }
      ASSERT_TRUE(opt.at_optimum()) << "lambda=" << lambda;
      ASSERT_TRUE(opt.consistent());
    }
  }
}

TEST(Optimizer, RateUsedByBestMatchesItsSubpopulation) {
  auto c = make(Variant::TwoRate, 100, 6);
  Optimizer opt(c, 17);
  for (int g = 0; g < 200 && !opt.at_optimum(); ++g) {
    const double low = opt.subpopulation_rate(RateChoice::Low);
    const double high = opt.subpopulation_rate(RateChoice::High);
    const auto& out = opt.step();
    EXPECT_EQ(out.rate_used_by_best, out.best_index < 3 ? low : high);
  }
}

TEST(Optimizer, PerOffspringRateIsCappedAtOne) {
  auto c = make(Variant::TwoRate, 4, 2);
  // r = 2, n = 4: the doubled rate 4/4 reaches one exactly.
  Optimizer opt(c, 1);
  EXPECT_DOUBLE_EQ(opt.subpopulation_rate(RateChoice::High), 1.0);
  c.r_init = 3.0;
  Optimizer opt2(c, 1);
  EXPECT_DOUBLE_EQ(opt2.subpopulation_rate(RateChoice::High), 1.0);
}

TEST(Optimizer, SingleOffspringTwoRateUsesDoubledRate) {
  auto c = make(Variant::TwoRate, 1000, 1);
  Optimizer opt(c, 3);
  for (int g = 0; g < 2000; ++g) {
    const double used = opt.subpopulation_rate(RateChoice::High);
    EXPECT_EQ(opt.step().rate_used_by_best, used);
  }
  // Every winner comes from the doubled half, so r settles at its upper clamp.
  EXPECT_GE(opt.rate_numerator(), c.r_max() / 2);
}

TEST(RunAlgorithm, DeterministicAndAccounted) {
  for (Variant v : {Variant::StaticEA, Variant::TwoRate, Variant::EaAb, Variant::ThreeRate}) {
    const auto c = make(v, 300, 5);
    const RunRecord a = run_algorithm(c, 42, {true, 1});
    const RunRecord b = run_algorithm(c, 42, {true, 1});
    EXPECT_EQ(a, b);
    EXPECT_TRUE(a.finished);
    EXPECT_EQ(a.evaluations, a.generations * 5);
    EXPECT_EQ(a.trajectory->front().generation, 0U);
    EXPECT_EQ(a.trajectory->back().generation, a.generations);
    EXPECT_EQ(a.trajectory->back().best_fitness, 300U);
  }
}

TEST(RunAlgorithm, BudgetStopsEarly) {
  auto c = make(Variant::StaticEA, 10'000, 1);
  c.budget_generations = 10;
  const RunRecord r = run_algorithm(c, 1);
  EXPECT_EQ(r.generations, 10U);
  EXPECT_EQ(r.evaluations, 10U);
  EXPECT_FALSE(r.finished);
  c.budget_generations = 0;
  EXPECT_EQ(run_algorithm(c, 1).generations, 0U);
}

TEST(RunAlgorithm, VariantCheckedEntryPoints) {
  const auto s = make(Variant::StaticEA, 50, 2);
  const auto t = make(Variant::TwoRate, 50, 2);
  const auto a = make(Variant::EaAb, 50, 2);
  const auto h = make(Variant::ThreeRate, 50, 3);
  EXPECT_EQ(run_static_ea(s, 3), run_algorithm(s, 3));
  EXPECT_EQ(run_two_rate(t, 3), run_algorithm(t, 3));
  EXPECT_EQ(run_ea_ab(a, 3), run_algorithm(a, 3));
  EXPECT_EQ(run_three_rate(h, 3), run_algorithm(h, 3));
  EXPECT_THROW(run_two_rate(s, 3), std::invalid_argument);
  EXPECT_THROW(run_static_ea(h, 3), std::invalid_argument);
}

TEST(RunAlgorithm, StrideKeepsStepFunction) {
  const auto c = make(Variant::StaticEA, 500, 1);
  const RunRecord full = run_algorithm(c, 9, {true, 1});
  const RunRecord sparse = run_algorithm(c, 9, {true, 25});
  EXPECT_EQ(full.generations, sparse.generations);
  for (const auto& pt : *sparse.trajectory) {
    EXPECT_TRUE(pt.generation % 25 == 0 || pt.generation == sparse.generations);
  }
  EXPECT_THROW(run_algorithm(c, 9, {true, 0}), std::invalid_argument);
}

// First-generation joint law of (parent, offspring) fitness against brute force.
TEST(SmallInstanceOracle, FirstGenerationMatchesEnumeration) {
  constexpr std::uint64_t trials = 40'000;
  for (Variant v : {Variant::StaticEA, Variant::TwoRate, Variant::EaAb, Variant::ThreeRate}) {
    for (std::size_t n : {2U, 4U}) {
      for (std::size_t lambda : {1U, 2U}) {
        const auto c = make(v, n, lambda);
        const double nd = static_cast<double>(n);
        std::vector<double> rates;
        for (std::size_t i = 0; i < lambda; ++i) {
          switch (v) {
            case Variant::StaticEA:
            case Variant::EaAb:
              rates.push_back(1.0 / nd);
              break;
            case Variant::TwoRate:
              rates.push_back(std::min(1.0, (i < lambda / 2 ? 1.0 : 4.0) / nd));
              break;
            case Variant::ThreeRate:
              rates.push_back(std::min(1.0, (i < lambda / 3 ? 1.4 : i < 2 * lambda / 3 ? 2.0 : 2.8) / nd));
              break;
          }
        }
        const auto law = oracle::first_generation_law(n, rates, c.op == OperatorKind::Shift);
        std::map<std::vector<std::size_t>, std::uint64_t> seen;
        for (std::uint64_t s = 0; s < trials; ++s) {
          Optimizer opt(c, s);
          std::vector<std::size_t> key{opt.fitness().value};
          opt.step();
          for (auto f : opt.offspring_fitness()) {
            key.push_back(f.value);
          }
          ++seen[key];
        }
        const auto r = oracle::chi_square(law, seen, trials);
        EXPECT_TRUE(r.pass) << "variant " << static_cast<int>(v) << " n=" << n
                            << " lambda=" << lambda << " stat=" << r.statistic
                            << " crit=" << r.critical;
      }
    }
  }
}
