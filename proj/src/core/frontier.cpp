#include "qram/core/frontier.hpp"

#include <algorithm>
#include <stdexcept>

namespace qram {

namespace {

// True when b does not lie strictly above the chord a -> c, i.e. slope(a,b) <= slope(b,c).
bool not_strictly_concave(const FrontierPoint& a, const FrontierPoint& b, const FrontierPoint& c) {
  const double lhs = (b.compound - a.compound) * (c.utility - b.utility);
  const double rhs = (b.utility - a.utility) * (c.compound - b.compound);
  return lhs >= rhs;
}

}  // namespace

Frontier concave_frontier(std::span<const ResourcePoint> points, const CompoundWeights& weights) {
  std::vector<FrontierPoint> all;
  all.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    all.push_back({compound_resource(points[i].resources, weights), clamp_utility(points[i].utility), i,
                   points[i].resources});
  }

  const FrontierPoint* start = nullptr;
  for (const auto& p : all) {
    if (p.compound == 0.0 && (start == nullptr || p.utility > start->utility)) start = &p;
  }
  if (start == nullptr) throw std::invalid_argument("frontier input lacks a zero-resource configuration");

  std::vector<FrontierPoint> candidates;
  for (const auto& p : all) {
    if (p.compound > 0.0 && p.utility > start->utility) candidates.push_back(p);
  }
  std::sort(candidates.begin(), candidates.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
    if (a.compound != b.compound) return a.compound < b.compound;
    if (a.utility != b.utility) return a.utility > b.utility;
    return a.config_index < b.config_index;
  });

  Frontier frontier;
  frontier.points.push_back(*start);
  auto& hull = frontier.points;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& p = candidates[i];
    if (i > 0 && candidates[i - 1].compound == p.compound) continue;  // dominated duplicate
    if (p.utility <= hull.back().utility) continue;
    while (hull.size() >= 2 && not_strictly_concave(hull[hull.size() - 2], hull.back(), p)) hull.pop_back();
    hull.push_back(p);
  }
  return frontier;
}

Frontier concave_frontier(std::span<const EvaluatedConfig> evaluated, const CompoundWeights& weights) {
  std::vector<ResourcePoint> points;
  points.reserve(evaluated.size());
  for (const auto& e : evaluated) points.push_back({e.resources, e.utility});
  return concave_frontier(points, weights);
}

}  // namespace qram
