#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qram/core/resource.hpp"
#include "qram/core/task_config.hpp"
#include "qram/models/enumerate.hpp"
#include "qram/models/task_models.hpp"

namespace qram::models {

enum class ConcurrencyMode { Standard, Interleaved, Multifunction, Multioperation };

std::string_view to_string(ConcurrencyMode mode);
std::optional<ConcurrencyMode> parse_mode(std::string_view name);

/// Hardware and waveform penalties applied when tasks share a block.
struct CombinationPenalties {
  double multifunction_quality_factor = 0.9;  ///< quality multiplier of a shared waveform
  double isolation_penalty_db = 3.0;          ///< SNR loss per member of a multioperation block
  double interleave_overhead_s = 0.0;         ///< beam-switch cost per interleaved insertion
};

struct CombinedMember {
  const TaskInstance* task = nullptr;
  TaskConfiguration config;
};

struct CombinedEvaluation {
  ResourceVector resources;
  std::vector<TaskConfiguration> configs;  ///< as executed; a stretched dwell is already shortened
  std::vector<ModelEvaluation> members;
  double utility = 0.0;
  double stretch = 0.0;  ///< epoch fraction a stretchable member yielded to its partners
};

/// Totals of a combined block without the per-member detail.
struct CombinedSummary {
  ResourceVector resources;
  double utility = 0.0;
  double stretch = 0.0;
};

/// A member's evaluation as it enters a block of the given mode: the plain
/// evaluation, with the waveform-sharing factor (multifunction) or with the
/// isolation loss (multioperation) applied. It does not depend on the partners.
ModelEvaluation prepare_member(ConcurrencyMode mode, const CombinedMember& member,
                               const CombinationPenalties& penalties);

/// Block totals from prepared member evaluations. Only a stretched member is
/// re-evaluated. Same rules and errors as combined_task_model.
CombinedSummary combine_prepared(ConcurrencyMode mode, std::span<const CombinedMember> members,
                                 std::span<const ModelEvaluation* const> prepared,
                                 const CombinationPenalties& penalties);
/// As combine_prepared, but nullopt where that throws CombinationError.
std::optional<CombinedSummary> try_combine_prepared(ConcurrencyMode mode, std::span<const CombinedMember> members,
                                                    std::span<const ModelEvaluation* const> prepared,
                                                    const CombinationPenalties& penalties);

/// Resources, member qualities and utility of tasks executed together.
///  - Multifunction: one waveform on the whole aperture, time = max of members,
///    each member's quality scaled by the waveform-sharing factor.
///  - Multioperation: side-by-side subarrays, element fractions add (must not
///    exceed 1), time = max, every member loses the isolation penalty in SNR.
///  - Interleaved: time slices of the whole aperture. A stretchable member
///    yields the partners' time (plus switch overhead) and its dwell shrinks;
///    otherwise times add and must fit the epoch.
/// Throws CombinationError for members that cannot share a block.
CombinedEvaluation combined_task_model(ConcurrencyMode mode, std::span<const CombinedMember> members,
                                       const CombinationPenalties& penalties);

}  // namespace qram::models
