#include "onemax/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace onemax {

namespace {

constexpr std::uint64_t fmix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check(bool ok, const std::string& message) {
  if (!ok) {
    throw std::logic_error("run record invariant violated: " + message);
  }
}

}  // namespace

void ExperimentSpec::validate() const {
  if (configs.empty()) {
    throw std::invalid_argument("ExperimentSpec: no configurations");
  }
  if (runs_per_config < 1) {
    throw std::invalid_argument("ExperimentSpec: runs_per_config must be at least 1");
  }
  if (trajectory_stride < 1) {
    throw std::invalid_argument("ExperimentSpec: trajectory_stride must be at least 1");
  }
  for (const auto& c : configs) {
    c.validate();
  }
}

std::uint64_t seed_for_run(std::uint64_t base_seed, std::uint64_t config_index,
                           std::uint64_t run_index) noexcept {
  const std::uint64_t inner =
      fmix(fmix(config_index + 0x9e3779b97f4a7c15ULL) ^ (run_index + 0xbf58476d1ce4e5b9ULL));
  return fmix(base_seed ^ inner);
}

RunFailure::RunFailure(std::size_t config_index, std::size_t run_index,
                       std::uint64_t seed, const std::string& what)
    : std::runtime_error("run failed (config " + std::to_string(config_index) +
                         ", run " + std::to_string(run_index) + ", seed " +
                         std::to_string(seed) + "): " + what),
      config_index_(config_index),
      run_index_(run_index),
      seed_(seed) {}

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec,
                                      std::size_t parallelism) {
  spec.validate();
  if (parallelism < 1) {
    throw std::invalid_argument("run_experiment: parallelism must be at least 1");
  }
  const std::size_t runs = spec.runs_per_config;
  const std::size_t total = spec.configs.size() * runs;
  std::vector<RunRecord> records(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  const RunOptions options{spec.record_trajectory, spec.trajectory_stride};

  auto worker = [&] {
    while (!abort.load(std::memory_order_relaxed)) {
      const std::size_t job = next.fetch_add(1, std::memory_order_relaxed);
      if (job >= total) {
        return;
      }
      const std::size_t config_index = job / runs;
      const std::size_t run_index = job % runs;
      const std::uint64_t seed = seed_for_run(spec.base_seed, config_index, run_index);
      try {
        RunRecord r = run_algorithm(spec.configs[config_index], seed, options);
        r.config_id = config_index;
        r.run_index = run_index;
        records[job] = std::move(r);
      } catch (...) {
        errors[job] = std::current_exception();
        abort.store(true, std::memory_order_relaxed);
      }
    }
  };

  const std::size_t threads = std::min(parallelism, total);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }

  for (std::size_t job = 0; job < total; ++job) {
    if (!errors[job]) {
      continue;
    }
    const std::size_t config_index = job / runs;
    const std::size_t run_index = job % runs;
    std::string what = "unknown error";
    try {
      std::rethrow_exception(errors[job]);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw RunFailure(config_index, run_index,
                     seed_for_run(spec.base_seed, config_index, run_index), what);
  }
  return records;
}

void validate_records(const ExperimentSpec& spec,
                      const std::vector<RunRecord>& records) {
  check(records.size() == spec.configs.size() * spec.runs_per_config,
        "record count does not match configs * runs_per_config");
  for (std::size_t job = 0; job < records.size(); ++job) {
    const RunRecord& r = records[job];
    const std::string where = "record " + std::to_string(job);
    check(r.config_id == job / spec.runs_per_config &&
              r.run_index == job % spec.runs_per_config,
          where + " is out of order");
    const AlgorithmConfig& config = spec.configs[r.config_id];
    check(r.evaluations == r.generations * config.lambda,
          where + ": evaluations != lambda * generations");
    check(r.trajectory.has_value() == spec.record_trajectory,
          where + ": trajectory presence does not match record_trajectory");
    if (!r.trajectory) {
      continue;
    }
    const auto& t = *r.trajectory;
    check(!t.empty() && t.front().generation == 0, where + ": trajectory must start at 0");
    for (std::size_t k = 1; k < t.size(); ++k) {
      check(t[k].generation > t[k - 1].generation,
            where + ": trajectory generations must strictly increase");
      check(t[k].best_fitness >= t[k - 1].best_fitness,
            where + ": trajectory fitness decreased");
    }
    check(t.back().generation == r.generations,
          where + ": trajectory must end at the final generation");
    check((t.back().best_fitness == config.n) == r.finished,
          where + ": final fitness disagrees with the finished flag");
  }
}

}  // namespace onemax
