#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "qram/concurrency/partition.hpp"
#include "qram/core/allocator.hpp"
#include "qram/models/combined.hpp"

namespace qram::concurrency {

struct LeafEvaluatorOptions {
  ConcurrencyMode mode = ConcurrencyMode::Standard;
  CompoundWeights weights = kDefaultCompoundWeights;
  /// Element fraction usable at any instant and time fraction per epoch.
  ResourceVector bounds{1.0, 1.0};
  /// Blocks run one after another, so each may use the full aperture: the
  /// element bound handed to the allocator is bounds.elements() times the
  /// number of blocks. Off means the bound is used as given.
  bool elements_per_block = true;
  models::CombinationPenalties penalties;
  /// Configurations kept per member when forming combined blocks (best
  /// utility-to-compound-resource ratio first). 0 keeps all of them.
  std::size_t thinning = 8;
};

/// One executable choice for a block: a configuration index per member into
/// that member's enumerate_configs list. Index 0 of every block is all-off.
struct BlockOption {
  ResourceVector resources;
  double utility = 0.0;
  double stretch = 0.0;
  std::vector<std::size_t> member_configs;
};

struct BlockEvaluation {
  BlockMask block = 0;
  std::vector<std::size_t> members;
  std::vector<BlockOption> options;
  Frontier frontier;
};

/// The selected option of one block with full per-member detail.
struct ChosenBlock {
  BlockMask block = 0;
  std::vector<std::size_t> members;
  bool off = true;
  models::CombinedEvaluation detail;  ///< empty when off
};

struct LeafResult {
  CombinationLeaf leaf;
  Allocation allocation;  ///< config_index indexes each block's options
  double utility = 0.0;
  std::vector<ChosenBlock> chosen;  ///< per block
};

/// Options of one block: the single-task grid for a singleton, the combined
/// cross product (members never off, failed combinations skipped) otherwise.
/// task_configs, when given, holds enumerate_configs of every task.
BlockEvaluation evaluate_block(std::span<const TaskInstance> tasks, BlockMask block,
                               const LeafEvaluatorOptions& options,
                               std::span<const std::vector<EvaluatedConfig>> task_configs = {});

/// Per-leaf Q-RAM: block frontiers followed by greedy allocation. Pure.
/// Throws std::invalid_argument when the leaf is not a partition of the tasks.
LeafResult evaluate_leaf(const CombinationLeaf& leaf, std::span<const TaskInstance> tasks,
                         const LeafEvaluatorOptions& options);

/// evaluate_leaf with per-task grids, blocks and leaf values cached for one
/// task set. Detail of the chosen options is built by result().
class LeafEvaluator {
 public:
  LeafEvaluator(std::span<const TaskInstance> tasks, LeafEvaluatorOptions options);

  /// Predicted utility of the leaf (memoized).
  double value(const CombinationLeaf& leaf);
  /// Full result; equal to evaluate_leaf(leaf, tasks, options).
  LeafResult result(const CombinationLeaf& leaf);

  [[nodiscard]] std::size_t evaluations() const { return leaves_.size(); }
  [[nodiscard]] const LeafEvaluatorOptions& options() const { return options_; }
  [[nodiscard]] std::span<const TaskInstance> tasks() const { return tasks_; }

 private:
  const BlockEvaluation& block(BlockMask mask);
  const Allocation& allocation(const CombinationLeaf& canonical);

  std::span<const TaskInstance> tasks_;
  LeafEvaluatorOptions options_;
  std::vector<std::vector<EvaluatedConfig>> configs_;
  std::map<BlockMask, BlockEvaluation> blocks_;
  std::map<std::vector<BlockMask>, Allocation> leaves_;
};

}  // namespace qram::concurrency
