#include "qram/concurrency/partition.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qram/errors.hpp"

namespace qram::concurrency {

namespace {

std::size_t lowest(BlockMask b) { return static_cast<std::size_t>(std::countr_zero(b)); }

}  // namespace

void canonicalize(CombinationLeaf& leaf) {
  std::sort(leaf.blocks.begin(), leaf.blocks.end(),
            [](BlockMask a, BlockMask b) { return lowest(a) < lowest(b); });
}

bool is_partition(const CombinationLeaf& leaf, std::size_t task_count) {
  BlockMask seen = 0;
  for (BlockMask b : leaf.blocks) {
    if (b == 0 || (seen & b) != 0) return false;
    seen |= b;
  }
  const BlockMask full = task_count >= kMaxTasks ? ~BlockMask{0} : (BlockMask{1} << task_count) - 1;
  return seen == full;
}

std::string leaf_label(const CombinationLeaf& leaf, std::span<const TaskInstance> tasks) {
  std::string out;
  for (BlockMask b : leaf.blocks) {
    out += '{';
    bool first = true;
    for (std::size_t i : block_members(b)) {
      if (!first) out += '+';
      out += i < tasks.size() ? tasks[i].id : std::to_string(i);
      first = false;
    }
    out += '}';
  }
  return out;
}

PartitionSpace::PartitionSpace(std::size_t task_count, std::span<const BlockMask> allowed_blocks)
    : task_count_(task_count), by_smallest_(task_count) {
  if (task_count > kMaxTasks) throw SizeError("at most 32 tasks can be combined");
  full_ = task_count == kMaxTasks ? ~BlockMask{0} : (BlockMask{1} << task_count) - 1;
  for (BlockMask b : allowed_blocks) {
    if (b == 0 || (b & ~full_) != 0) throw std::invalid_argument("block references unknown tasks");
    by_smallest_[lowest(b)].push_back(b);
  }
  for (std::size_t i = 0; i < task_count; ++i) {
    auto& list = by_smallest_[i];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (std::find(list.begin(), list.end(), BlockMask{1} << i) == list.end()) {
      throw std::invalid_argument("every task needs its singleton block");
    }
  }
}

PartitionSpace::PartitionSpace(std::span<const TaskInstance> tasks, const CombinationRule& rule)
    : PartitionSpace(tasks.size(), feasible_blocks(tasks, rule)) {}

std::vector<BlockMask> PartitionSpace::children(BlockMask assigned) const {
  std::vector<BlockMask> out;
  const BlockMask open = full_ & ~assigned;
  if (open == 0) return out;
  for (BlockMask b : by_smallest_[lowest(open)]) {
    if ((b & assigned) == 0) out.push_back(b);
  }
  return out;
}

bool PartitionSpace::allows(BlockMask block) const {
  if (block == 0 || (block & ~full_) != 0) return false;
  const auto& list = by_smallest_[lowest(block)];
  return std::binary_search(list.begin(), list.end(), block);
}

bool PartitionSpace::valid(const CombinationLeaf& leaf) const {
  if (!is_partition(leaf, task_count_)) return false;
  return std::all_of(leaf.blocks.begin(), leaf.blocks.end(), [&](BlockMask b) { return allows(b); });
}

namespace {

void collect(const PartitionSpace& space, BlockMask assigned, std::vector<BlockMask>& path,
             std::vector<CombinationLeaf>& out) {
  if (assigned == space.full()) {
    out.push_back({path});
    return;
  }
  for (BlockMask b : space.children(assigned)) {
    path.push_back(b);
    collect(space, assigned | b, path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<CombinationLeaf> enumerate_leaves(const PartitionSpace& space) {
  if (space.task_count() > kLeafEnumerationGuard) {
    throw SizeError("leaf enumeration is limited to " + std::to_string(kLeafEnumerationGuard) + " tasks");
  }
  std::vector<CombinationLeaf> out;
  std::vector<BlockMask> path;
  if (space.task_count() == 0) return {CombinationLeaf{}};
  collect(space, 0, path, out);
  return out;
}

std::vector<CombinationLeaf> enumerate_leaves(std::span<const TaskInstance> tasks, const CombinationRule& rule) {
  if (tasks.size() > kLeafEnumerationGuard) {
    throw SizeError("leaf enumeration is limited to " + std::to_string(kLeafEnumerationGuard) + " tasks");
  }
  return enumerate_leaves(PartitionSpace(tasks, rule));
}

}  // namespace qram::concurrency
