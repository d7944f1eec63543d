#include "onemax/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace onemax {

namespace {

void require(bool ok, const char* message) {
  if (!ok) {
    throw std::invalid_argument(std::string("AlgorithmConfig: ") + message);
  }
}

double multiplier(RateChoice group, double low, double high) noexcept {
  switch (group) {
    case RateChoice::Low:
      return low;
    case RateChoice::Mid:
      return 1.0;
    case RateChoice::High:
      return high;
  }
  return 1.0;
}

double adapt_numerator(double r, RateChoice winner, Rng& rng, double low,
                       double high, const AlgorithmConfig& config) {
  if (coin(rng)) {
    r *= multiplier(winner, low, high);
  } else {
    r *= coin(rng) ? high : low;
  }
  return std::min(std::max(config.r_min(), r), config.r_max());
}

void require_variant(const AlgorithmConfig& config, Variant expected,
                     const char* name) {
  if (config.variant != expected) {
    throw std::invalid_argument(std::string(name) +
                                ": configuration is for a different variant");
  }
}

}  // namespace

OperatorKind default_operator(Variant v) noexcept {
  return v == Variant::ThreeRate ? OperatorKind::Standard : OperatorKind::Shift;
}

void AlgorithmConfig::validate() const {
  require(n >= 1, "n must be at least 1");
  require(n <= std::numeric_limits<std::int32_t>::max(), "n is too large");
  require(lambda >= 1, "lambda must be at least 1");
  if (p_static) {
    require(*p_static > 0.0 && *p_static <= 1.0, "p must lie in (0, 1]");
  }
  require(r_init > 0.0 && std::isfinite(r_init), "r_init must be positive");
  require(increase_factor > 1.0 && std::isfinite(increase_factor), "A must exceed 1");
  require(decrease_factor > 0.0 && decrease_factor < 1.0, "b must lie in (0, 1)");
  require(success_ratio > 0.0 && success_ratio < 1.0,
          "success ratio must lie in (0, 1)");
  require(two_rate_low > 0.0 && two_rate_low < 1.0,
          "2-rate low multiplier must lie in (0, 1)");
  require(two_rate_high > 1.0 && std::isfinite(two_rate_high),
          "2-rate high multiplier must exceed 1");
  require(three_rate_low > 0.0 && three_rate_low < 1.0, "c1 must lie in (0, 1)");
  require(three_rate_high > 1.0 && std::isfinite(three_rate_high), "c2 must exceed 1");
}

double AlgorithmConfig::static_rate() const noexcept {
  return p_static.value_or(1.0 / static_cast<double>(n));
}

double AlgorithmConfig::p_min() const noexcept {
  const auto nd = static_cast<double>(n);
  return p_min_rule == PMinRule::OverN ? 1.0 / nd : 1.0 / (nd * nd);
}

double AlgorithmConfig::r_min() const noexcept {
  return p_min_rule == PMinRule::OverN ? 2.0 : 2.0 / static_cast<double>(n);
}

double AlgorithmConfig::r_max() const noexcept {
  return static_cast<double>(n) / 4.0;
}

std::size_t AlgorithmConfig::success_threshold() const noexcept {
  const double x = success_ratio * static_cast<double>(lambda);
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, x)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(x));
}

std::array<std::size_t, 3> subpopulation_sizes(const AlgorithmConfig& config) {
  const std::size_t lambda = config.lambda;
  switch (config.variant) {
    case Variant::TwoRate:
      return {lambda / 2, 0, lambda - lambda / 2};
    case Variant::ThreeRate:
      return {lambda / 3, 2 * lambda / 3 - lambda / 3, lambda - 2 * lambda / 3};
    case Variant::StaticEA:
    case Variant::EaAb:
      break;
  }
  return {0, lambda, 0};
}

std::size_t select_best(std::span<const Fitness> fitnesses, Rng& rng) {
  if (fitnesses.empty()) {
    throw std::invalid_argument("select_best: empty offspring list");
  }
  Fitness best = fitnesses.front();
  std::size_t best_index = 0;
  std::size_t ties = 1;
  for (std::size_t i = 1; i < fitnesses.size(); ++i) {
    if (fitnesses[i] > best) {
      best = fitnesses[i];
      best_index = i;
      ties = 1;
    } else if (fitnesses[i] == best) {
      ++ties;
    }
  }
  if (ties == 1) {
    return best_index;
  }
  auto skip = uniform_below(rng, ties);
  for (std::size_t i = best_index;; ++i) {
    if (fitnesses[i] == best && skip-- == 0) {
      return i;
    }
  }
}

double two_rate_update(double r, RateChoice winner, Rng& rng,
                       const AlgorithmConfig& config) {
  if (winner == RateChoice::Mid) {
    throw std::invalid_argument("two_rate_update: the 2-rate scheme has no middle rate");
  }
  return adapt_numerator(r, winner, rng, config.two_rate_low, config.two_rate_high,
                         config);
}

double three_rate_update(double r, RateChoice winner, Rng& rng,
                         const AlgorithmConfig& config) {
  return adapt_numerator(r, winner, rng, config.three_rate_low,
                         config.three_rate_high, config);
}

double ab_update(double p, std::size_t good_offspring,
                 const AlgorithmConfig& config) {
  if (good_offspring >= config.success_threshold()) {
    return std::min(0.5, config.increase_factor * p);
  }
  return std::max(config.p_min(), config.decrease_factor * p);
}

Optimizer::Optimizer(const AlgorithmConfig& config, std::uint64_t seed)
    : config_(config), rng_(seed), parent_(1) {
  config_.validate();
  parent_ = random_bitstring(config_.n, rng_);
  fitness_ = onemax_eval(parent_).value;
  r_ = config_.r_init;
  p_ = config_.variant == Variant::EaAb ? 1.0 / static_cast<double>(config_.n)
                                        : config_.static_rate();

  const auto sizes = subpopulation_sizes(config_);
  first_mid_ = sizes[0];
  first_high_ = sizes[0] + sizes[1];

  slot_.resize(config_.n);
  zero_pool_.reserve(config_.n);
  one_pool_.reserve(config_.n);
  for (std::uint32_t i = 0; i < config_.n; ++i) {
    auto& pool = parent_.test(i) ? one_pool_ : zero_pool_;
    slot_[i] = static_cast<std::uint32_t>(pool.size());
    pool.push_back(i);
  }
  offspring_.resize(config_.lambda);
  offspring_fitness_.resize(config_.lambda);
}

RateChoice Optimizer::group_of(std::size_t index) const noexcept {
  if (index < first_mid_) {
    return RateChoice::Low;
  }
  return index < first_high_ ? RateChoice::Mid : RateChoice::High;
}

double Optimizer::subpopulation_rate(RateChoice group) const noexcept {
  const auto nd = static_cast<double>(config_.n);
  double rate = 0.0;
  switch (config_.variant) {
    case Variant::StaticEA:
    case Variant::EaAb:
      rate = p_;
      break;
    case Variant::TwoRate:
      rate = r_ * multiplier(group, config_.two_rate_low, config_.two_rate_high) / nd;
      break;
    case Variant::ThreeRate:
      rate = r_ * multiplier(group, config_.three_rate_low, config_.three_rate_high) / nd;
      break;
  }
  return std::min(rate, 1.0);
}

const GenerationOutcome& Optimizer::step() {
  const std::size_t ones = fitness_;
  const std::size_t zeros = config_.n - fitness_;
  const std::array<std::size_t, 4> bounds{0, first_mid_, first_high_, config_.lambda};
  constexpr std::array<RateChoice, 3> groups{RateChoice::Low, RateChoice::Mid,
                                             RateChoice::High};

  std::array<double, 3> rates{};
  std::size_t good = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (bounds[g] == bounds[g + 1]) {
      continue;
    }
    rates[g] = subpopulation_rate(groups[g]);
    auto& sampler = samplers_[g];
    sampler.assign(config_.op, zeros, ones, rates[g]);
    for (std::size_t i = bounds[g]; i < bounds[g + 1]; ++i) {
      const FlipCounts c = sampler(rng_);
      offspring_[i] = c;
      offspring_fitness_[i] = Fitness{ones + c.zeros - c.ones};
      good += c.zeros >= c.ones ? 1 : 0;
    }
  }

  // The success count is taken against the parent before replacement.
  if (config_.variant == Variant::EaAb) {
    p_ = ab_update(p_, good, config_);
  }

  const std::size_t best = select_best(offspring_fitness_, rng_);
  const RateChoice winner = group_of(best);
  outcome_.best_index = best;
  outcome_.best_fitness = offspring_fitness_[best];
  outcome_.accepted = offspring_fitness_[best].value >= fitness_;
  outcome_.rate_used_by_best = rates[static_cast<std::size_t>(winner)];
  if (outcome_.accepted) {
    apply_flips(offspring_[best]);
  }

  if (config_.variant == Variant::TwoRate) {
    r_ = two_rate_update(r_, winner, rng_, config_);
  } else if (config_.variant == Variant::ThreeRate) {
    r_ = three_rate_update(r_, winner, rng_, config_);
  }
  ++generation_;
  return outcome_;
}

void Optimizer::remove_from_pool(std::vector<std::uint32_t>& pool,
                                 std::uint32_t pos) {
  const std::uint32_t at = slot_[pos];
  const std::uint32_t last = pool.back();
  pool[at] = last;
  slot_[last] = at;
  pool.pop_back();
}

void Optimizer::apply_flips(FlipCounts counts) {
  // Partial Fisher-Yates inside each pool picks a uniform subset of the class.
  picked_.clear();
  auto pick = [this](std::vector<std::uint32_t>& pool, std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto t = j + static_cast<std::size_t>(uniform_below(rng_, pool.size() - j));
      std::swap(pool[j], pool[t]);
      slot_[pool[j]] = static_cast<std::uint32_t>(j);
      slot_[pool[t]] = static_cast<std::uint32_t>(t);
      picked_.push_back(pool[j]);
    }
  };
  pick(zero_pool_, counts.zeros);
  pick(one_pool_, counts.ones);

  for (std::size_t k = 0; k < picked_.size(); ++k) {
    const std::uint32_t pos = picked_[k];
    const bool was_zero = k < counts.zeros;
    auto& from = was_zero ? zero_pool_ : one_pool_;
    auto& to = was_zero ? one_pool_ : zero_pool_;
    remove_from_pool(from, pos);
    slot_[pos] = static_cast<std::uint32_t>(to.size());
    to.push_back(pos);
    parent_.flip(pos);
  }
  fitness_ = fitness_ + counts.zeros - counts.ones;
}

bool Optimizer::consistent() const {
  if (parent_.count() != fitness_ || one_pool_.size() != fitness_ ||
      zero_pool_.size() != config_.n - fitness_) {
    return false;
  }
  for (std::size_t k = 0; k < one_pool_.size(); ++k) {
    if (!parent_.test(one_pool_[k]) || slot_[one_pool_[k]] != k) {
      return false;
    }
  }
  for (std::size_t k = 0; k < zero_pool_.size(); ++k) {
    if (parent_.test(zero_pool_[k]) || slot_[zero_pool_[k]] != k) {
      return false;
    }
  }
  return true;
}

RunRecord run_algorithm(const AlgorithmConfig& config, std::uint64_t seed,
                        RunOptions options) {
  if (options.trajectory_stride == 0) {
    throw std::invalid_argument("run_algorithm: trajectory stride must be positive");
  }
  Optimizer opt(config, seed);
  RunRecord record;
  record.seed = seed;

  std::vector<TrajectoryPoint> trajectory;
  std::size_t last_recorded = opt.fitness().value;
  if (options.record_trajectory) {
    trajectory.push_back({0, last_recorded});
  }

  const std::uint64_t budget =
      config.budget_generations.value_or(std::numeric_limits<std::uint64_t>::max());
  while (!opt.at_optimum() && opt.generation() < budget) {
    opt.step();
    if (options.record_trajectory &&
        opt.generation() % options.trajectory_stride == 0 &&
        opt.fitness().value != last_recorded) {
      last_recorded = opt.fitness().value;
      trajectory.push_back({opt.generation(), last_recorded});
    }
  }

  record.generations = opt.generation();
  record.evaluations = record.generations * config.lambda;
  record.finished = opt.at_optimum();
  if (options.record_trajectory) {
    if (trajectory.back().generation != record.generations) {
      trajectory.push_back({record.generations, opt.fitness().value});
    }
    record.trajectory = std::move(trajectory);
  }
  return record;
}

RunRecord run_static_ea(const AlgorithmConfig& config, std::uint64_t seed,
                        RunOptions options) {
  require_variant(config, Variant::StaticEA, "run_static_ea");
  return run_algorithm(config, seed, options);
}

RunRecord run_two_rate(const AlgorithmConfig& config, std::uint64_t seed,
                       RunOptions options) {
  require_variant(config, Variant::TwoRate, "run_two_rate");
  return run_algorithm(config, seed, options);
}

RunRecord run_ea_ab(const AlgorithmConfig& config, std::uint64_t seed,
                    RunOptions options) {
  require_variant(config, Variant::EaAb, "run_ea_ab");
  return run_algorithm(config, seed, options);
}

RunRecord run_three_rate(const AlgorithmConfig& config, std::uint64_t seed,
                         RunOptions options) {
  require_variant(config, Variant::ThreeRate, "run_three_rate");
  return run_algorithm(config, seed, options);
}

}  // namespace onemax
