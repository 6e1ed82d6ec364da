#include "qram/models/combined.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "qram/errors.hpp"

namespace qram::models {

namespace {

constexpr std::array<std::string_view, 4> kModeNames{"standard", "interleaved", "multifunction", "multioperation"};

void check_members(std::span<const CombinedMember> members) {
  if (members.empty()) throw std::invalid_argument("combined block without members");
  for (const auto& m : members) {
    if (m.task == nullptr) throw std::invalid_argument("combined member without task");
    if (m.config.off) throw CombinationError("combined member is switched off");
  }
}

std::ptrdiff_t stretchable_member(std::span<const CombinedMember> members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].task->spec.params.stretchable && members[i].config.dwell_fraction > 0.0) {
      return static_cast<std::ptrdiff_t>(i);
    }
  }
  return -1;
}

TaskConfiguration shortened(const CombinedMember& m, double yielded);

/// Interleaved block: the stretched member (or -1) and the epoch fraction it
/// yields. Sets why and returns nullopt when the partners do not fit.
std::optional<std::pair<std::ptrdiff_t, double>> interleave_plan(std::span<const CombinedMember> members,
                                                                 std::span<const ModelEvaluation* const> prepared,
                                                                 const CombinationPenalties& penalties,
                                                                 ResourceVector& resources, const char*& why) {
  const std::ptrdiff_t s = stretchable_member(members);
  const double epoch = members.front().task->env.system.epoch_s;
  const double overhead = penalties.interleave_overhead_s / epoch * static_cast<double>(members.size() - 1);
  double others = 0.0;
  double elements = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    elements = std::max(elements, prepared[i]->resources.elements());
    if (static_cast<std::ptrdiff_t>(i) != s) others += prepared[i]->resources.time();
  }
  const double yielded = others + overhead;
  if (s < 0) {
    if (yielded > 1.0 + kResourceTolerance) {
      why = "interleaved members exceed the epoch";
      return std::nullopt;
    }
    resources = {elements, yielded};
    return std::pair{s, 0.0};
  }
  const double original = members[static_cast<std::size_t>(s)].config.dwell_fraction;
  if (yielded >= original) {
    why = "interleaved partners consume the whole stretchable dwell";
    return std::nullopt;
  }
  resources = {elements, std::max(original, prepared[static_cast<std::size_t>(s)]->resources.time())};
  return std::pair{s, yielded};
}

/// Shared body of combine_prepared and try_combine_prepared. Structural
/// misuse throws; incompatible member options set why and return nullopt.
std::optional<CombinedSummary> combine(ConcurrencyMode mode, std::span<const CombinedMember> members,
                                       std::span<const ModelEvaluation* const> prepared,
                                       const CombinationPenalties& penalties, const char*& why) {
  if (members.empty()) throw std::invalid_argument("combined block without members");
  if (prepared.size() != members.size()) throw std::invalid_argument("one prepared evaluation per member required");
  for (const auto& m : members) {
    if (m.task == nullptr) throw std::invalid_argument("combined member without task");
    if (m.config.off) {
      why = "combined member is switched off";
      return std::nullopt;
    }
  }
  CombinedSummary out;
  switch (mode) {
    case ConcurrencyMode::Standard:
      if (members.size() != 1) {
        why = "standard mode does not combine tasks";
        return std::nullopt;
      }
      out.resources = prepared[0]->resources;
      out.utility = prepared[0]->utility;
      return out;
    case ConcurrencyMode::Interleaved: {
      const auto plan = interleave_plan(members, prepared, penalties, out.resources, why);
      if (!plan) return std::nullopt;
      const auto [s, yielded] = *plan;
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (static_cast<std::ptrdiff_t>(i) == s) {
          out.utility += evaluate(*members[i].task, shortened(members[i], yielded)).utility;
        } else {
          out.utility += prepared[i]->utility;
        }
      }
      out.stretch = yielded;
      return out;
    }
    case ConcurrencyMode::Multifunction: {
      double time = 0.0;
      for (const auto* e : prepared) {
        time = std::max(time, e->resources.time());
        out.utility += e->utility;
      }
      out.resources = {1.0, time};
      return out;
    }
    case ConcurrencyMode::Multioperation: {
      double elements = 0.0;
      double time = 0.0;
      for (const auto* e : prepared) {
        elements += e->resources.elements();
        time = std::max(time, e->resources.time());
        out.utility += e->utility;
      }
      if (elements > 1.0 + kResourceTolerance) {
        why = "subarrays oversubscribe the aperture";
        return std::nullopt;
      }
      out.resources = {elements, time};
      return out;
    }
  }
  throw std::invalid_argument("unknown concurrency mode");
}

TaskConfiguration shortened(const CombinedMember& m, double yielded) {
  TaskConfiguration c = m.config;
  c.dwell_fraction -= yielded;
  return c;
}

}  // namespace

std::string_view to_string(ConcurrencyMode mode) { return kModeNames[static_cast<std::size_t>(mode)]; }

std::optional<ConcurrencyMode> parse_mode(std::string_view name) {
  for (std::size_t i = 0; i < kModeNames.size(); ++i) {
    if (kModeNames[i] == name) return static_cast<ConcurrencyMode>(i);
  }
  return std::nullopt;
}

ModelEvaluation prepare_member(ConcurrencyMode mode, const CombinedMember& member,
                               const CombinationPenalties& penalties) {
  const TaskInstance& task = *member.task;
  switch (mode) {
    case ConcurrencyMode::Multifunction:
      return evaluate(task, member.config, penalties.multifunction_quality_factor);
    case ConcurrencyMode::Multioperation: {
      Environment isolated = task.env;
      isolated.task.loss_db += penalties.isolation_penalty_db;
      return model_for(task.type).evaluate(member.config, isolated, task.spec.params, 1.0);
    }
    case ConcurrencyMode::Standard:
    case ConcurrencyMode::Interleaved:
      break;
  }
  return evaluate(task, member.config);
}

CombinedSummary combine_prepared(ConcurrencyMode mode, std::span<const CombinedMember> members,
                                 std::span<const ModelEvaluation* const> prepared,
                                 const CombinationPenalties& penalties) {
  const char* why = "";
  auto out = combine(mode, members, prepared, penalties, why);
  if (!out) throw CombinationError(why);
  return *out;
}

std::optional<CombinedSummary> try_combine_prepared(ConcurrencyMode mode, std::span<const CombinedMember> members,
                                                    std::span<const ModelEvaluation* const> prepared,
                                                    const CombinationPenalties& penalties) {
  const char* why = "";
  return combine(mode, members, prepared, penalties, why);
}

CombinedEvaluation combined_task_model(ConcurrencyMode mode, std::span<const CombinedMember> members,
                                       const CombinationPenalties& penalties) {
  check_members(members);
  std::vector<ModelEvaluation> prepared;
  prepared.reserve(members.size());
  for (const auto& m : members) prepared.push_back(prepare_member(mode, m, penalties));
  std::vector<const ModelEvaluation*> ptrs;
  for (const auto& e : prepared) ptrs.push_back(&e);
  const CombinedSummary summary = combine_prepared(mode, members, ptrs, penalties);

  CombinedEvaluation out;
  out.resources = summary.resources;
  out.utility = summary.utility;
  out.stretch = summary.stretch;
  const std::ptrdiff_t s = mode == ConcurrencyMode::Interleaved && summary.stretch > 0.0 ? stretchable_member(members)
                                                                                        : -1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (static_cast<std::ptrdiff_t>(i) == s) {
      TaskConfiguration c = shortened(members[i], summary.stretch);
      out.members.push_back(evaluate(*members[i].task, c));
      out.configs.push_back(c);
    } else {
      out.members.push_back(std::move(prepared[i]));
      out.configs.push_back(members[i].config);
    }
  }
  return out;
}

}  // namespace qram::models
