#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qram/core/frontier.hpp"
#include "qram/core/resource.hpp"
#include "qram/core/task_config.hpp"

namespace qram {

/// Chosen configuration per task together with the totals it achieves.
struct Allocation {
  std::vector<std::size_t> config_index;  ///< index into each task's evaluated list
  double total_utility = 0.0;
  ResourceVector total_resources;
};

/// Non-retracting greedy allocation over concave frontiers. Every task starts
/// at its first frontier point; the move with the largest marginal utility per
/// marginal compound resource whose full resource delta still fits the
/// remaining bounds is taken until no move fits. A task's move is to its next
/// frontier point, or, when that does not fit, to the nearest later point that
/// does. Ties go to the lowest task index.
Allocation allocate_greedy(std::span<const Frontier> frontiers, const ResourceVector& bounds,
                           const CompoundWeights& weights);

/// Largest utility increment of any single frontier step.
double max_frontier_step(std::span<const Frontier> frontiers);

/// Maximum number of configuration tuples allocate_exact will enumerate.
inline constexpr std::size_t kExactAllocationGuard = 1'000'000;

/// Exhaustive optimum over all configuration tuples, ties broken by the
/// lexicographically smallest index tuple. Throws SizeError above the guard.
Allocation allocate_exact(std::span<const std::vector<ResourcePoint>> per_task, const ResourceVector& bounds);
Allocation allocate_exact(std::span<const std::vector<EvaluatedConfig>> per_task, const ResourceVector& bounds);

}  // namespace qram
