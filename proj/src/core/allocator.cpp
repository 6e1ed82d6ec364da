#include "qram/core/allocator.hpp"

#include <algorithm>
#include <stdexcept>

#include "qram/errors.hpp"

namespace qram {

Allocation allocate_greedy(std::span<const Frontier> frontiers, const ResourceVector& bounds,
                           const CompoundWeights& weights) {
  validate_weights(weights);
  for (std::size_t j = 0; j < kResourceDims; ++j) {
    if (!(bounds[j] > 0.0)) throw std::invalid_argument("allocation bounds must be positive");
  }

  const std::size_t n = frontiers.size();
  std::vector<std::size_t> position(n, 0);
  Allocation result;
  result.config_index.resize(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (frontiers[i].points.empty()) throw std::invalid_argument("empty frontier");
    result.total_resources += frontiers[i].points.front().resources;
    result.total_utility += frontiers[i].points.front().utility;
  }

  while (true) {
    std::size_t best_task = n;
    std::size_t best_target = 0;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& pts = frontiers[i].points;
      const auto& from = pts[position[i]];
      // Nearest frontier point whose delta fits. Components need not grow
      // along the frontier, so a blocked next point may hide a fitting later
      // one; by concavity the nearest fitting point has the best ratio.
      for (std::size_t k = position[i] + 1; k < pts.size(); ++k) {
        const auto& to = pts[k];
        if (!(result.total_resources + (to.resources - from.resources)).fits_within(bounds)) continue;
        const double ratio = (to.utility - from.utility) / (to.compound - from.compound);
        if (best_task == n || ratio > best_ratio) {
          best_task = i;
          best_target = k;
          best_ratio = ratio;
        }
        break;
      }
    }
    if (best_task == n) break;
    const auto& pts = frontiers[best_task].points;
    const auto& from = pts[position[best_task]];
    const auto& to = pts[best_target];
    result.total_resources += to.resources - from.resources;
    result.total_utility += to.utility - from.utility;
    position[best_task] = best_target;
  }

  for (std::size_t i = 0; i < n; ++i) result.config_index[i] = frontiers[i].points[position[i]].config_index;
  return result;
}

double max_frontier_step(std::span<const Frontier> frontiers) {
  double best = 0.0;
  for (const auto& f : frontiers) {
    for (std::size_t m = 1; m < f.points.size(); ++m) {
      best = std::max(best, f.points[m].utility - f.points[m - 1].utility);
    }
  }
  return best;
}

Allocation allocate_exact(std::span<const std::vector<ResourcePoint>> per_task, const ResourceVector& bounds) {
  const std::size_t n = per_task.size();
  std::size_t total = 1;
  for (const auto& configs : per_task) {
    if (configs.empty()) throw std::invalid_argument("task without configurations");
    if (total > kExactAllocationGuard / configs.size()) {
      throw SizeError("exhaustive allocation exceeds " + std::to_string(kExactAllocationGuard) + " tuples");
    }
    total *= configs.size();
  }

  Allocation best;
  best.config_index.assign(n, 0);
  bool found = false;

  std::vector<std::size_t> tuple(n, 0);
  for (std::size_t count = 0; count < total; ++count) {
    ResourceVector used;
    double utility = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      used += per_task[i][tuple[i]].resources;
      utility += clamp_utility(per_task[i][tuple[i]].utility);
    }
    if (used.fits_within(bounds) && (!found || utility > best.total_utility)) {
      found = true;
      best.config_index = tuple;
      best.total_utility = utility;
      best.total_resources = used;
    }
    // odometer increment, last task fastest, so iteration is lexicographic
    for (std::size_t k = n; k-- > 0;) {
      if (++tuple[k] < per_task[k].size()) break;
      tuple[k] = 0;
    }
  }
  return best;
}

Allocation allocate_exact(std::span<const std::vector<EvaluatedConfig>> per_task, const ResourceVector& bounds) {
  std::vector<std::vector<ResourcePoint>> points(per_task.size());
  for (std::size_t i = 0; i < per_task.size(); ++i) {
    for (const auto& e : per_task[i]) points[i].push_back({e.resources, e.utility});
  }
  return allocate_exact(points, bounds);
}

}  // namespace qram
