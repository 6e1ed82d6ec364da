#include "qram/concurrency/rules.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qram/errors.hpp"

namespace qram::concurrency {

void CombinationRule::validate() const {
  if (max_group_size < 1) throw std::invalid_argument("max_group_size must be at least 1");
}

double angular_separation(const TaskInstance& a, const TaskInstance& b) {
  const auto& ea = a.env.task;
  const auto& eb = b.env.task;
  const double c = std::sin(ea.elevation_rad) * std::sin(eb.elevation_rad) +
                   std::cos(ea.elevation_rad) * std::cos(eb.elevation_rad) * std::cos(ea.azimuth_rad - eb.azimuth_rad);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double band_overlap(const TaskInstance& a, const TaskInstance& b) {
  const auto& ba = a.spec.params.band;
  const auto& bb = b.spec.params.band;
  const double lo = std::max(ba.center_hz - ba.width_hz / 2.0, bb.center_hz - bb.width_hz / 2.0);
  const double hi = std::min(ba.center_hz + ba.width_hz / 2.0, bb.center_hz + bb.width_hz / 2.0);
  return std::max(0.0, hi - lo);
}

std::vector<std::size_t> block_members(BlockMask block) {
  std::vector<std::size_t> out;
  while (block != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(block)));
    block &= block - 1;
  }
  return out;
}

namespace {

bool multifunction_pair(const CombinationRule& rule, TaskType a, TaskType b) {
  return std::any_of(rule.multifunction_pairs.begin(), rule.multifunction_pairs.end(), [&](const auto& p) {
    return (p.first == a && p.second == b) || (p.first == b && p.second == a);
  });
}

}  // namespace

bool group_allowed(std::span<const TaskInstance> tasks, BlockMask block, const CombinationRule& rule) {
  const auto members = block_members(block);
  if (members.size() <= 1) return true;
  if (members.size() > rule.group_limit()) return false;

  switch (rule.mode) {
    case ConcurrencyMode::Standard:
      return false;
    case ConcurrencyMode::Interleaved:
      // beam-level interleaving only pays off inside a long dwell that can yield time
      return std::any_of(members.begin(), members.end(),
                         [&](std::size_t i) { return tasks[i].spec.params.stretchable; });
    case ConcurrencyMode::Multifunction:
      for (std::size_t x = 0; x < members.size(); ++x) {
        for (std::size_t y = x + 1; y < members.size(); ++y) {
          const auto& a = tasks[members[x]];
          const auto& b = tasks[members[y]];
          if (!multifunction_pair(rule, a.type, b.type)) return false;
          if (angular_separation(a, b) > rule.multifunction_max_separation_rad) return false;
        }
      }
      return true;
    case ConcurrencyMode::Multioperation: {
      const bool first_transmits = models::transmits(tasks[members.front()].type);
      for (std::size_t x = 0; x < members.size(); ++x) {
        const auto& a = tasks[members[x]];
        // concurrent transmit and receive on different subarrays is not supported
        if (models::transmits(a.type) != first_transmits) return false;
        for (std::size_t y = x + 1; y < members.size(); ++y) {
          const auto& b = tasks[members[y]];
          if (angular_separation(a, b) < rule.angular_threshold_rad && band_overlap(a, b) > rule.band_overlap_hz) {
            return false;
          }
        }
      }
      return true;
    }
  }
  return false;
}

std::vector<BlockMask> feasible_blocks(std::span<const TaskInstance> tasks, const CombinationRule& rule) {
  rule.validate();
  if (tasks.size() > kMaxTasks) throw SizeError("at most 32 tasks can be combined");
  std::vector<BlockMask> out;
  const std::size_t limit = std::min(rule.group_limit(), tasks.size());

  // grow groups member by member in ascending index order
  std::vector<BlockMask> frontier;
  for (std::size_t i = 0; i < tasks.size(); ++i) frontier.push_back(BlockMask{1} << i);
  out = frontier;
  for (std::size_t size = 2; size <= limit; ++size) {
    std::vector<BlockMask> next;
    for (BlockMask base : frontier) {
      const auto top = static_cast<std::size_t>(std::bit_width(base));
      for (std::size_t j = top; j < tasks.size(); ++j) {
        const BlockMask candidate = base | (BlockMask{1} << j);
        next.push_back(candidate);
      }
    }
    for (BlockMask b : next) {
      if (group_allowed(tasks, b, rule)) out.push_back(b);
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qram::concurrency
