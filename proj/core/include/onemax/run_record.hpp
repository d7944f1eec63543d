#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace onemax {

struct TrajectoryPoint {
  std::uint64_t generation = 0;
  std::size_t best_fitness = 0;

  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

/// Outcome of one independent run.
///
/// A trajectory, when recorded, holds generation 0, every stride-aligned
/// generation at which the best-so-far fitness changed, and the final
/// generation. Best-so-far is a step function between consecutive points.
struct RunRecord {
  std::size_t config_id = 0;
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  std::uint64_t generations = 0;
  std::uint64_t evaluations = 0;
  bool finished = false;
  std::optional<std::vector<TrajectoryPoint>> trajectory;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

}  // namespace onemax
