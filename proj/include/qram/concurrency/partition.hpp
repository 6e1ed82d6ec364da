#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qram/concurrency/rules.hpp"

namespace qram::concurrency {

/// A partition of the active task set into allowed blocks; one root-to-leaf
/// path of the combination tree. Blocks are kept sorted by their smallest member.
struct CombinationLeaf {
  std::vector<BlockMask> blocks;

  friend bool operator==(const CombinationLeaf&, const CombinationLeaf&) = default;
  friend auto operator<=>(const CombinationLeaf&, const CombinationLeaf&) = default;
};

/// Puts blocks in canonical order (ascending smallest member).
void canonicalize(CombinationLeaf& leaf);

/// True when every task 0..task_count-1 appears in exactly one block.
bool is_partition(const CombinationLeaf& leaf, std::size_t task_count);

/// Human-readable form such as "{sar+trk_1}{surv}".
std::string leaf_label(const CombinationLeaf& leaf, std::span<const TaskInstance> tasks);

/// The combination tree. A node is a set of assigned tasks; its children add
/// one allowed block containing the smallest unassigned task, so every
/// partition is reached by exactly one path.
class PartitionSpace {
 public:
  PartitionSpace(std::size_t task_count, std::span<const BlockMask> allowed_blocks);
  PartitionSpace(std::span<const TaskInstance> tasks, const CombinationRule& rule);

  [[nodiscard]] std::size_t task_count() const { return task_count_; }
  [[nodiscard]] BlockMask full() const { return full_; }
  /// Blocks that may be appended to a node with the given assigned set.
  [[nodiscard]] std::vector<BlockMask> children(BlockMask assigned) const;
  /// Whether the block is one of the allowed blocks.
  [[nodiscard]] bool allows(BlockMask block) const;
  /// A partition made only of allowed blocks.
  [[nodiscard]] bool valid(const CombinationLeaf& leaf) const;

 private:
  std::size_t task_count_;
  BlockMask full_;
  std::vector<std::vector<BlockMask>> by_smallest_;
};

inline constexpr std::size_t kLeafEnumerationGuard = 12;

/// Every partition in the space, depth-first in child order. Throws SizeError
/// above kLeafEnumerationGuard tasks.
std::vector<CombinationLeaf> enumerate_leaves(const PartitionSpace& space);
std::vector<CombinationLeaf> enumerate_leaves(std::span<const TaskInstance> tasks, const CombinationRule& rule);

}  // namespace qram::concurrency
