#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "qram/models/combined.hpp"
#include "qram/models/enumerate.hpp"

namespace qram::concurrency {

using models::ConcurrencyMode;
using models::TaskInstance;
using models::TaskType;

/// A block of tasks as a bit set over task indices (at most 32 active tasks).
using BlockMask = std::uint32_t;
inline constexpr std::size_t kMaxTasks = 32;

/// Which task groups may share a block.
struct CombinationRule {
  ConcurrencyMode mode = ConcurrencyMode::Standard;
  std::size_t max_group_size = 2;
  /// Multioperation: members closer than this in direction ...
  double angular_threshold_rad = 5.0 * std::numbers::pi / 180.0;
  /// ... whose bands overlap by more than this are not combined.
  double band_overlap_hz = 0.0;
  /// Multifunction: type pairs with a registered combined waveform.
  std::vector<std::pair<TaskType, TaskType>> multifunction_pairs{{TaskType::AirSurveillance, TaskType::DataLink}};
  /// Multifunction: members must lie within this angle of each other.
  double multifunction_max_separation_rad = std::numbers::pi;

  /// Standard mode never groups tasks.
  [[nodiscard]] std::size_t group_limit() const { return mode == ConcurrencyMode::Standard ? 1 : max_group_size; }
  /// Throws std::invalid_argument when max_group_size < 1.
  void validate() const;
};

/// Angle between the pointing directions of two tasks.
double angular_separation(const TaskInstance& a, const TaskInstance& b);
/// Overlap (Hz) of the two tasks' bands, 0 when disjoint.
double band_overlap(const TaskInstance& a, const TaskInstance& b);

/// Whether the tasks of a multi-member block may be combined under the rule.
bool group_allowed(std::span<const TaskInstance> tasks, BlockMask block, const CombinationRule& rule);

/// All singletons plus every allowed group of size 2..group_limit(), in
/// ascending mask order. Throws SizeError above kMaxTasks tasks.
std::vector<BlockMask> feasible_blocks(std::span<const TaskInstance> tasks, const CombinationRule& rule);

/// Task indices of a block, ascending.
std::vector<std::size_t> block_members(BlockMask block);

}  // namespace qram::concurrency
