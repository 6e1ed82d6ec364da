#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "qram/concurrency/leaf_eval.hpp"
#include "qram/concurrency/partition.hpp"

namespace qram::concurrency {

struct MctsOptions {
  std::size_t iterations = 200;
  double exploration_c = std::numbers::sqrt2;
  std::uint64_t seed = 1;
  /// Leaves valued before the search starts, e.g. the previous epoch's plan.
  /// They compete for best-seen but do not shape the tree statistics.
  std::vector<CombinationLeaf> warm_start;
};

struct MctsResult {
  CombinationLeaf leaf;
  double utility = 0.0;
  std::vector<double> best_trace;  ///< best-seen utility after each iteration
  std::size_t iterations_run = 0;  ///< stops early once every leaf has been evaluated
  std::size_t leaf_evaluations = 0;
};

using LeafValueFn = std::function<double(const CombinationLeaf&)>;

/// UCT search over the partition tree. Selection maximizes
/// mean/best + c*sqrt(ln N_parent / N_child) among children with unexplored
/// leaves below them; expansion adds one random untried block; the rollout
/// completes the partition uniformly at random. Leaf values are memoized, so
/// each distinct leaf is valued once. The best leaf seen is returned (ties
/// keep the earliest). Deterministic for a given seed.
MctsResult mcts_search(const PartitionSpace& space, const LeafValueFn& value, const MctsOptions& options);

struct MctsPlan {
  MctsResult search;
  LeafResult result;  ///< full evaluation of search.leaf
};

/// Search over the rule's partitions with per-leaf Q-RAM as value.
MctsPlan mcts_search(std::span<const TaskInstance> tasks, const CombinationRule& rule, LeafEvaluator& evaluator,
                     const MctsOptions& options);

}  // namespace qram::concurrency
