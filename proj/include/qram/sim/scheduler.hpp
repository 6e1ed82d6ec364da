#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qram/concurrency/leaf_eval.hpp"

namespace qram::sim {

/// One occupied rectangle of the (time, element) plane.
struct TimelineEntry {
  std::size_t block = 0;                ///< index of the block in the leaf
  std::vector<std::string> task_ids;    ///< several only for a shared multifunction waveform
  std::vector<models::TaskType> types;
  double start_s = 0.0;
  double duration_s = 0.0;
  double element_offset = 0.0;          ///< first element fraction occupied
  double element_fraction = 0.0;
  double duty = 0.0;                    ///< PRF * pulse width of pulsed radar members, else 0
  bool radiates = false;                ///< radar or electronic attack emission

  [[nodiscard]] double end_s() const { return start_s + duration_s; }
};

struct DroppedBlock {
  std::size_t block = 0;
  std::vector<std::string> task_ids;
};

struct Timeline {
  std::vector<TimelineEntry> entries;
  std::vector<DroppedBlock> drops;
  [[nodiscard]] bool dropped(std::size_t block) const;
};

/// Places the allocated blocks of a leaf on one epoch. Blocks go first-fit in
/// decreasing utility per compound resource; interleaved members get disjoint
/// slices of the whole aperture (partners first, then the stretched dwell),
/// a multifunction block is one whole-aperture entry, multioperation members
/// run side by side. A block that would overrun the epoch is dropped.
Timeline schedule_timeline(const concurrency::LeafResult& plan, std::span<const models::TaskInstance> tasks,
                           models::ConcurrencyMode mode, double epoch_s, const CompoundWeights& weights,
                           double interleave_overhead_s = 0.0);

}  // namespace qram::sim
