#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qram/core/resource.hpp"
#include "qram/core/task_config.hpp"

namespace qram {

/// A (resource vector, utility) pair, the only view of a configuration the
/// frontier construction needs.
struct ResourcePoint {
  ResourceVector resources;
  double utility = 0.0;
};

struct FrontierPoint {
  double compound = 0.0;
  double utility = 0.0;
  std::size_t config_index = 0;
  ResourceVector resources;
};

/// Upper concave majorant of a task's configurations in (compound resource,
/// utility) space. Points are strictly increasing in both coordinates and the
/// chord slopes strictly decrease; the first point is the zero-resource start.
struct Frontier {
  std::vector<FrontierPoint> points;

  [[nodiscard]] std::size_t size() const { return points.size(); }
};

/// Builds the concave frontier. The input must contain a zero-resource
/// configuration (the off-configuration); std::invalid_argument otherwise.
Frontier concave_frontier(std::span<const ResourcePoint> points, const CompoundWeights& weights);
Frontier concave_frontier(std::span<const EvaluatedConfig> evaluated, const CompoundWeights& weights);

}  // namespace qram
