#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "onemax/algorithms.hpp"
#include "onemax/run_record.hpp"
#include "onemax/stats.hpp"

namespace onemax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRunFailure = 3;

/// Evaluation cap applied when --budget-gens is not given.
inline constexpr std::uint64_t kDefaultEvaluationCap = 1'000'000'000;

std::string_view algo_name(Variant v);
std::string_view p_min_name(PMinRule rule);
std::string_view mutation_name(OperatorKind kind);

/// Integers print bare; reals with 6 significant digits ("%.6g"), NaN as "nan".
std::string format_real(double value);

void write_runs_csv(std::ostream& out, const std::vector<AlgorithmConfig>& configs,
                    const std::vector<RunRecord>& records);

/// One aggregate row per configuration; `usable` holds the finished records
/// of each configuration.
void write_aggregate_header(std::ostream& out);
void write_aggregate_row(std::ostream& out, const AlgorithmConfig& config,
                         const std::vector<RunRecord>& usable);

void write_curve_header(std::ostream& out);
void write_curve_rows(std::ostream& out, const AlgorithmConfig& config,
                      const FixedBudgetCurve& curve);

void write_sweep_header(std::ostream& out);
void write_sweep_row(std::ostream& out, const AlgorithmConfig& config,
                     const std::vector<RunRecord>& usable);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace onemax::cli
