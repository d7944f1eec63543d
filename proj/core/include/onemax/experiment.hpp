#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "onemax/algorithms.hpp"
#include "onemax/run_record.hpp"

namespace onemax {

/// Cross product of configurations and independent runs.
struct ExperimentSpec {
  std::vector<AlgorithmConfig> configs;
  std::size_t runs_per_config = 100;
  std::uint64_t base_seed = 0;
  bool record_trajectory = false;
  std::uint64_t trajectory_stride = 1;

  void validate() const;
};

/// Seed of run `run_index` of configuration `config_index`.
///
///   seed = fmix(base_seed ^ fmix(fmix(config_index + K1) ^ (run_index + K2)))
///
/// where fmix is the SplitMix64 finalizer, K1 = 0x9e3779b97f4a7c15 and
/// K2 = 0xbf58476d1ce4e5b9. For fixed indices the map is a bijection of
/// base_seed. seed_for_run(0, 0, 0) == 0x62d9ea67f942c94b.
std::uint64_t seed_for_run(std::uint64_t base_seed, std::uint64_t config_index,
                           std::uint64_t run_index) noexcept;

/// A run threw; carries the coordinates needed to replay it alone.
class RunFailure : public std::runtime_error {
 public:
  RunFailure(std::size_t config_index, std::size_t run_index, std::uint64_t seed,
             const std::string& what);

  std::size_t config_index() const noexcept { return config_index_; }
  std::size_t run_index() const noexcept { return run_index_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::size_t config_index_;
  std::size_t run_index_;
  std::uint64_t seed_;
};

/// Executes every run on `parallelism` worker threads. Output is ordered by
/// (config_index, run_index) and does not depend on the thread count. The first
/// failing run, lowest index first, is rethrown as RunFailure after the
/// workers stop.
std::vector<RunRecord> run_experiment(const ExperimentSpec& spec,
                                      std::size_t parallelism);

/// Checks record invariants (evaluation accounting, trajectory shape and
/// monotonicity, finished flag). Throws std::logic_error on the first breach.
void validate_records(const ExperimentSpec& spec,
                      const std::vector<RunRecord>& records);

}  // namespace onemax
