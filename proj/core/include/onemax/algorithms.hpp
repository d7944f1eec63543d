#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "onemax/bitstring.hpp"
#include "onemax/mutation.hpp"
#include "onemax/random.hpp"
#include "onemax/run_record.hpp"

namespace onemax {

enum class Variant {
  StaticEA,   // fixed mutation rate
  TwoRate,    // halves at r*low/n and r*high/n
  EaAb,       // multiplicative success-based rate control
  ThreeRate,  // thirds at c1*r/n, r/n, c2*r/n
};

/// Lower bound on the mutation rate: 1/n or 1/n^2.
enum class PMinRule { OverN, OverNSquared };

/// Offspring subpopulation, identified by the multiplier its rate was built with.
enum class RateChoice { Low, Mid, High };

OperatorKind default_operator(Variant v) noexcept;

struct AlgorithmConfig {
  Variant variant = Variant::StaticEA;
  std::size_t n = 100;
  std::size_t lambda = 1;
  OperatorKind op = OperatorKind::Shift;
  PMinRule p_min_rule = PMinRule::OverN;

  std::optional<double> p_static;  // StaticEA; 1/n when unset
  double r_init = 2.0;             // TwoRate, ThreeRate

  double increase_factor = 2.0;  // EaAb, A > 1
  double decrease_factor = 0.5;  // EaAb, 0 < b < 1
  double success_ratio = 0.05;   // EaAb, share of offspring that must be >= parent

  double two_rate_low = 0.5;
  double two_rate_high = 2.0;
  double three_rate_low = 0.7;   // c1
  double three_rate_high = 1.4;  // c2

  std::optional<std::uint64_t> budget_generations;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;

  double static_rate() const noexcept;
  /// 1/n or 1/n^2.
  double p_min() const noexcept;
  /// Clamp interval for the rate numerator r of TwoRate/ThreeRate: the lower
  /// end is 2 under OverN and 2/n under OverNSquared, the upper end n/4.
  double r_min() const noexcept;
  double r_max() const noexcept;
  /// ceil(success_ratio * lambda), robust to the rounding of the product.
  std::size_t success_threshold() const noexcept;

  friend bool operator==(const AlgorithmConfig&, const AlgorithmConfig&) = default;
};

/// Sizes of the Low, Mid and High subpopulations. Single-rate variants put
/// everything in Mid; TwoRate uses floor(lambda/2) Low and the rest High;
/// ThreeRate uses floor(lambda/3), floor(2 lambda/3) - floor(lambda/3), rest.
std::array<std::size_t, 3> subpopulation_sizes(const AlgorithmConfig& config);

/// Index of a maximum, uniform over all maxima. One stream draw when tied,
/// none otherwise. Throws std::invalid_argument on an empty list.
std::size_t select_best(std::span<const Fitness> fitnesses, Rng& rng);

/// 2-rate rule: with probability 1/2 adopt the winner's numerator, otherwise
/// multiply by low or high equiprobably; then clamp to [r_min, r_max].
double two_rate_update(double r, RateChoice winner, Rng& rng,
                       const AlgorithmConfig& config);
/// Same rule over three subpopulations with multipliers c1, 1, c2.
double three_rate_update(double r, RateChoice winner, Rng& rng,
                         const AlgorithmConfig& config);

/// Multiplies p by A when at least success_threshold() offspring were at least
/// as fit as the parent, by b otherwise, clamped to [p_min, 1/2].
double ab_update(double p, std::size_t good_offspring,
                 const AlgorithmConfig& config);

struct GenerationOutcome {
  std::size_t best_index = 0;
  Fitness best_fitness{};
  bool accepted = false;
  double rate_used_by_best = 0.0;
};

/// One run of a (1+λ) EA variant on OneMax, advanced a generation at a time.
///
/// Offspring are kept as FlipCounts and only the selected one is written into
/// the parent, so a generation costs O(λ + flipped bits of the winner).
class Optimizer {
 public:
  Optimizer(const AlgorithmConfig& config, std::uint64_t seed);

  const GenerationOutcome& step();

  const AlgorithmConfig& config() const noexcept { return config_; }
  std::uint64_t generation() const noexcept { return generation_; }
  Fitness fitness() const noexcept { return Fitness{fitness_}; }
  bool at_optimum() const noexcept { return fitness_ == config_.n; }
  const BitString& parent() const noexcept { return parent_; }

  /// Rate numerator r (TwoRate, ThreeRate).
  double rate_numerator() const noexcept { return r_; }
  /// Current adaptive rate p (EaAb).
  double mutation_rate() const noexcept { return p_; }
  /// Per-bit flip probability used for a subpopulation in the next generation.
  double subpopulation_rate(RateChoice group) const noexcept;

  std::span<const Fitness> offspring_fitness() const noexcept {
    return offspring_fitness_;
  }
  const GenerationOutcome& last_outcome() const noexcept { return outcome_; }

  /// Cross-checks the fitness cache and index pools against the bit string.
  bool consistent() const;

 private:
  RateChoice group_of(std::size_t index) const noexcept;
  void apply_flips(FlipCounts counts);
  void remove_from_pool(std::vector<std::uint32_t>& pool, std::uint32_t pos);

  AlgorithmConfig config_;
  Rng rng_;
  BitString parent_;
  std::size_t fitness_ = 0;
  std::uint64_t generation_ = 0;
  double r_ = 0.0;
  double p_ = 0.0;

  std::vector<std::uint32_t> zero_pool_;
  std::vector<std::uint32_t> one_pool_;
  std::vector<std::uint32_t> slot_;  // index of each position in its pool
  std::vector<std::uint32_t> picked_;
  std::size_t first_mid_ = 0;
  std::size_t first_high_ = 0;

  std::array<SplitFlipSampler, 3> samplers_;
  std::vector<FlipCounts> offspring_;
  std::vector<Fitness> offspring_fitness_;
  GenerationOutcome outcome_;
};

struct RunOptions {
  bool record_trajectory = false;
  std::uint64_t trajectory_stride = 1;
};

/// Runs until the optimum or the generation budget. evaluations = λ·generations;
/// the initial evaluation is not counted. config_id and run_index are left 0.
RunRecord run_algorithm(const AlgorithmConfig& config, std::uint64_t seed,
                        RunOptions options = {});

// Variant-checked entry points; each throws std::invalid_argument when
// config.variant does not match.
RunRecord run_static_ea(const AlgorithmConfig& config, std::uint64_t seed,
                        RunOptions options = {});
RunRecord run_two_rate(const AlgorithmConfig& config, std::uint64_t seed,
                       RunOptions options = {});
RunRecord run_ea_ab(const AlgorithmConfig& config, std::uint64_t seed,
                    RunOptions options = {});
RunRecord run_three_rate(const AlgorithmConfig& config, std::uint64_t seed,
                         RunOptions options = {});

}  // namespace onemax
