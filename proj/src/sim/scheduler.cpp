#include "qram/sim/scheduler.hpp"

#include <algorithm>
#include <numeric>

namespace qram::sim {

namespace {

constexpr double kTimeTolerance = 1e-9;

bool pulsed_radar(models::TaskType type) { return models::emission_class(type) == models::EmissionClass::Radar; }

bool radiates(models::TaskType type) {
  const auto c = models::emission_class(type);
  return c == models::EmissionClass::Radar || c == models::EmissionClass::ElectronicAttack;
}

TimelineEntry member_entry(std::size_t block, const models::TaskInstance& task, const TaskConfiguration& config,
                           double start, double duration, double offset, double elements) {
  TimelineEntry e;
  e.block = block;
  e.task_ids = {task.id};
  e.types = {task.type};
  e.start_s = start;
  e.duration_s = duration;
  e.element_offset = offset;
  e.element_fraction = elements;
  e.duty = pulsed_radar(task.type) ? config.prf_hz * config.pulse_width_s : 0.0;
  e.radiates = radiates(task.type);
  return e;
}

}  // namespace

bool Timeline::dropped(std::size_t block) const {
  return std::any_of(drops.begin(), drops.end(), [&](const DroppedBlock& d) { return d.block == block; });
}

Timeline schedule_timeline(const concurrency::LeafResult& plan, std::span<const models::TaskInstance> tasks,
                           models::ConcurrencyMode mode, double epoch_s, const CompoundWeights& weights,
                           double interleave_overhead_s) {
  std::vector<std::size_t> order;
  std::vector<double> ratio(plan.chosen.size(), 0.0);
  for (std::size_t b = 0; b < plan.chosen.size(); ++b) {
    if (plan.chosen[b].off) continue;
    order.push_back(b);
    const double h = compound_resource(plan.chosen[b].detail.resources, weights);
    ratio[b] = h > 0.0 ? plan.chosen[b].detail.utility / h : 0.0;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ratio[a] > ratio[b]; });

  Timeline out;
  double cursor = 0.0;
  for (std::size_t b : order) {
    const auto& chosen = plan.chosen[b];
    const auto& detail = chosen.detail;
    const double duration = detail.resources.time() * epoch_s;
    if (cursor + duration > epoch_s + kTimeTolerance) {
      DroppedBlock d{b, {}};
      for (std::size_t m : chosen.members) d.task_ids.push_back(tasks[m].id);
      out.drops.push_back(std::move(d));
      continue;
    }
    const std::size_t k = chosen.members.size();
    auto task_of = [&](std::size_t j) -> const models::TaskInstance& { return tasks[chosen.members[j]]; };

    if (k == 1) {
      out.entries.push_back(member_entry(b, task_of(0), detail.configs[0], cursor, duration, 0.0,
                                         detail.members[0].resources.elements()));
    } else if (mode == models::ConcurrencyMode::Multifunction) {
      TimelineEntry e;
      e.block = b;
      e.start_s = cursor;
      e.duration_s = duration;
      e.element_offset = 0.0;
      e.element_fraction = 1.0;
      for (std::size_t j = 0; j < k; ++j) {
        e.task_ids.push_back(task_of(j).id);
        e.types.push_back(task_of(j).type);
        if (pulsed_radar(task_of(j).type)) {
          e.duty = std::max(e.duty, detail.configs[j].prf_hz * detail.configs[j].pulse_width_s);
        }
        e.radiates = e.radiates || radiates(task_of(j).type);
      }
      out.entries.push_back(std::move(e));
    } else if (mode == models::ConcurrencyMode::Multioperation) {
      double offset = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        const auto& eval = detail.members[j];
        out.entries.push_back(member_entry(b, task_of(j), detail.configs[j], cursor,
                                           eval.resources.time() * epoch_s, offset, eval.resources.elements()));
        offset += eval.resources.elements();
      }
    } else {
      // interleaved: partners and switch gaps first, the stretched member fills the rest
      std::ptrdiff_t stretched = -1;
      for (std::size_t j = 0; j < k; ++j) {
        if (detail.stretch > 0.0 && task_of(j).spec.params.stretchable && stretched < 0) {
          stretched = static_cast<std::ptrdiff_t>(j);
        }
      }
      double t = cursor;
      for (std::size_t j = 0; j < k; ++j) {
        if (static_cast<std::ptrdiff_t>(j) == stretched) continue;
        const auto& eval = detail.members[j];
        const double d = eval.resources.time() * epoch_s;
        out.entries.push_back(member_entry(b, task_of(j), detail.configs[j], t, d, 0.0, eval.resources.elements()));
        t += d + interleave_overhead_s;
      }
      if (stretched >= 0) {
        const auto j = static_cast<std::size_t>(stretched);
        const double d = std::max(0.0, cursor + duration - t);
        out.entries.push_back(member_entry(b, task_of(j), detail.configs[j], t, d, 0.0,
                                           detail.members[j].resources.elements()));
      }
    }
    cursor += duration;
  }
  return out;
}

}  // namespace qram::sim
