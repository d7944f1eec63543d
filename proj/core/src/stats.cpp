#include "onemax/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace onemax {

AggregateStats aggregate(std::span<const RunRecord> records, Metric metric) {
  if (records.empty()) {
    throw std::invalid_argument("aggregate: no records");
  }
  const std::size_t config = records.front().config_id;
  for (const auto& r : records) {
    if (!r.finished) {
      throw std::invalid_argument("aggregate: unfinished run (seed " +
                                  std::to_string(r.seed) +
                                  ") has a censored runtime");
    }
    if (r.config_id != config) {
      throw std::invalid_argument("aggregate: records from different configurations");
    }
  }

  auto value = [metric](const RunRecord& r) {
    return static_cast<double>(metric == Metric::Generations ? r.generations
                                                             : r.evaluations);
  };
  // Two passes keep the variance free of cancellation.
  double sum = 0.0;
  for (const auto& r : records) {
    sum += value(r);
  }
  AggregateStats s;
  s.metric = metric;
  s.count = records.size();
  s.mean = sum / static_cast<double>(s.count);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  if (s.count < 2) {
    s.sd = nan;
    s.rdev = nan;
    return s;
  }
  double ss = 0.0;
  for (const auto& r : records) {
    const double d = value(r) - s.mean;
    ss += d * d;
  }
  s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
  s.rdev = s.mean > 0.0 ? s.sd / s.mean : nan;
  return s;
}

FixedBudgetCurve fixed_budget_curve(std::span<const RunRecord> records,
                                    std::uint64_t horizon, std::uint64_t stride) {
  if (records.empty()) {
    throw std::invalid_argument("fixed_budget_curve: no records");
  }
  if (stride == 0) {
    throw std::invalid_argument("fixed_budget_curve: stride must be positive");
  }
  for (const auto& r : records) {
    if (!r.trajectory || r.trajectory->empty()) {
      throw std::invalid_argument("fixed_budget_curve: record without trajectory");
    }
  }

  FixedBudgetCurve curve;
  for (std::uint64_t g = 0;; g += stride) {
    curve.generations.push_back(std::min(g, horizon));
    if (g >= horizon) {
      break;
    }
  }
  curve.mean_best_fitness.assign(curve.generations.size(), 0.0);

  // Every trajectory and the grid are sorted, so one cursor per run suffices.
  for (const auto& r : records) {
    const auto& t = *r.trajectory;
    std::size_t k = 0;
    for (std::size_t i = 0; i < curve.generations.size(); ++i) {
      while (k + 1 < t.size() && t[k + 1].generation <= curve.generations[i]) {
        ++k;
      }
      curve.mean_best_fitness[i] += static_cast<double>(t[k].best_fitness);
    }
  }
  const auto runs = static_cast<double>(records.size());
  for (auto& v : curve.mean_best_fitness) {
    v /= runs;
  }
  return curve;
}

}  // namespace onemax
