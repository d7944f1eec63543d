#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "onemax/run_record.hpp"

namespace onemax {

enum class Metric { Generations, Evaluations };

/// Mean, sample standard deviation (divisor count - 1) and relative deviation
/// sd / mean of a runtime metric. sd and rdev are NaN for a single run; rdev is
/// NaN when the mean is zero.
struct AggregateStats {
  Metric metric = Metric::Generations;
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;
  double rdev = 0.0;
};

/// Throws std::invalid_argument for an empty list, an unfinished record, or
/// records from more than one configuration.
AggregateStats aggregate(std::span<const RunRecord> records, Metric metric);

/// Average best-so-far fitness per generation.
struct FixedBudgetCurve {
  std::vector<std::uint64_t> generations;
  std::vector<double> mean_best_fitness;
};

/// Evaluates the mean of the runs' best-so-far step functions at generations
/// 0, stride, 2*stride, ... and at `horizon` itself. A run that stopped earlier
/// contributes its final value. Throws std::invalid_argument if a record has
/// no trajectory or the list is empty.
FixedBudgetCurve fixed_budget_curve(std::span<const RunRecord> records,
                                    std::uint64_t horizon, std::uint64_t stride = 1);

}  // namespace onemax
