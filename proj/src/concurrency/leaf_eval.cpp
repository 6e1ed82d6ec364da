#include "qram/concurrency/leaf_eval.hpp"

#include <algorithm>
#include <stdexcept>

#include "qram/errors.hpp"

namespace qram::concurrency {

namespace {

/// Indices of the configurations a member contributes to combined blocks.
std::vector<std::size_t> thinned(const std::vector<EvaluatedConfig>& configs, const LeafEvaluatorOptions& options) {
  std::vector<std::size_t> idx;
  std::vector<double> ratio(configs.size(), 0.0);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (configs[i].config.off) continue;
    idx.push_back(i);
    const double h = compound_resource(configs[i].resources, options.weights);
    ratio[i] = h > 0.0 ? configs[i].utility / h : 0.0;
  }
  if (options.thinning == 0 || idx.size() <= options.thinning) return idx;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return ratio[a] > ratio[b]; });
  idx.resize(options.thinning);
  std::sort(idx.begin(), idx.end());
  return idx;
}

bool advance(std::vector<std::size_t>& odo, const std::vector<std::vector<std::size_t>>& picks) {
  for (std::size_t k = odo.size(); k-- > 0;) {
    if (++odo[k] < picks[k].size()) return true;
    odo[k] = 0;
  }
  return false;
}

void add_combined_options(std::span<const TaskInstance> tasks, BlockEvaluation& out,
                          std::span<const std::vector<EvaluatedConfig>> grids, const LeafEvaluatorOptions& options) {
  const std::size_t k = out.members.size();
  std::vector<std::vector<std::size_t>> picks(k);
  std::vector<std::vector<models::ModelEvaluation>> prepared(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto& grid = grids[out.members[j]];
    picks[j] = thinned(grid, options);
    if (picks[j].empty()) return;
    for (std::size_t i : picks[j]) {
      prepared[j].push_back(
          models::prepare_member(options.mode, {&tasks[out.members[j]], grid[i].config}, options.penalties));
    }
  }

  std::vector<std::size_t> odo(k, 0);
  std::vector<models::CombinedMember> members(k);
  std::vector<const models::ModelEvaluation*> ptrs(k);
  do {
    for (std::size_t j = 0; j < k; ++j) {
      members[j] = {&tasks[out.members[j]], grids[out.members[j]][picks[j][odo[j]]].config};
      ptrs[j] = &prepared[j][odo[j]];
    }
    // tuples that cannot share a block are skipped; other tuples may
    if (const auto s = models::try_combine_prepared(options.mode, members, ptrs, options.penalties)) {
      BlockOption o;
      o.resources = s->resources;
      o.utility = clamp_utility(s->utility);
      o.stretch = s->stretch;
      o.member_configs.resize(k);
      for (std::size_t j = 0; j < k; ++j) o.member_configs[j] = picks[j][odo[j]];
      out.options.push_back(std::move(o));
    }
  } while (advance(odo, picks));
}

BlockEvaluation build_block(std::span<const TaskInstance> tasks, BlockMask block,
                            std::span<const std::vector<EvaluatedConfig>> grids, const LeafEvaluatorOptions& options) {
  BlockEvaluation out;
  out.block = block;
  out.members = block_members(block);
  if (out.members.empty() || out.members.back() >= tasks.size()) {
    throw std::invalid_argument("block references unknown tasks");
  }
  BlockOption off;
  off.member_configs.assign(out.members.size(), 0);
  out.options.push_back(std::move(off));

  if (out.members.size() == 1) {
    const auto& grid = grids[out.members.front()];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i].config.off) continue;
      out.options.push_back({grid[i].resources, grid[i].utility, 0.0, {i}});
    }
  } else {
    add_combined_options(tasks, out, grids, options);
  }

  std::vector<ResourcePoint> points;
  points.reserve(out.options.size());
  for (const auto& o : out.options) points.push_back({o.resources, o.utility});
  out.frontier = concave_frontier(points, options.weights);
  return out;
}

std::vector<std::vector<EvaluatedConfig>> all_grids(std::span<const TaskInstance> tasks) {
  std::vector<std::vector<EvaluatedConfig>> grids;
  grids.reserve(tasks.size());
  for (const auto& t : tasks) {
    grids.push_back(models::enumerate_configs(t.spec, t.env));
    if (grids.back().empty() || !grids.back().front().config.off) {
      throw std::logic_error("configuration list must start with the off-configuration");
    }
  }
  return grids;
}

ResourceVector leaf_bounds(const CombinationLeaf& leaf, const LeafEvaluatorOptions& options) {
  if (!options.elements_per_block) return options.bounds;
  return {options.bounds.elements() * static_cast<double>(leaf.blocks.size()), options.bounds.time()};
}

Allocation allocate(const CombinationLeaf& leaf, std::span<const BlockEvaluation* const> blocks,
                    const LeafEvaluatorOptions& options) {
  std::vector<Frontier> frontiers;
  frontiers.reserve(blocks.size());
  for (const auto* b : blocks) frontiers.push_back(b->frontier);
  return allocate_greedy(frontiers, leaf_bounds(leaf, options), options.weights);
}

ChosenBlock materialize(std::span<const TaskInstance> tasks, const BlockEvaluation& block, std::size_t option,
                        std::span<const std::vector<EvaluatedConfig>> grids, const LeafEvaluatorOptions& options) {
  ChosenBlock c;
  c.block = block.block;
  c.members = block.members;
  if (option == 0) return c;
  c.off = false;
  const auto& o = block.options[option];
  if (block.members.size() == 1) {
    const auto& e = grids[block.members.front()][o.member_configs.front()];
    c.detail.resources = e.resources;
    c.detail.utility = e.utility;
    c.detail.configs = {e.config};
    c.detail.members = {models::ModelEvaluation{e.resources, e.quality, e.nonweighted_utility, e.utility}};
    return c;
  }
  std::vector<models::CombinedMember> members;
  for (std::size_t j = 0; j < block.members.size(); ++j) {
    members.push_back({&tasks[block.members[j]], grids[block.members[j]][o.member_configs[j]].config});
  }
  c.detail = models::combined_task_model(options.mode, members, options.penalties);
  return c;
}

LeafResult assemble(const CombinationLeaf& leaf, const Allocation& allocation, std::span<const TaskInstance> tasks,
                    std::span<const BlockEvaluation* const> blocks, std::span<const std::vector<EvaluatedConfig>> grids,
                    const LeafEvaluatorOptions& options) {
  LeafResult out;
  out.leaf = leaf;
  out.allocation = allocation;
  out.utility = allocation.total_utility;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    out.chosen.push_back(materialize(tasks, *blocks[i], allocation.config_index[i], grids, options));
  }
  return out;
}

void require_partition(const CombinationLeaf& leaf, std::size_t task_count) {
  if (!is_partition(leaf, task_count)) throw std::invalid_argument("leaf is not a partition of the task set");
}

}  // namespace

BlockEvaluation evaluate_block(std::span<const TaskInstance> tasks, BlockMask block,
                               const LeafEvaluatorOptions& options,
                               std::span<const std::vector<EvaluatedConfig>> task_configs) {
  if (!task_configs.empty()) return build_block(tasks, block, task_configs, options);
  const auto grids = all_grids(tasks);
  return build_block(tasks, block, grids, options);
}

LeafResult evaluate_leaf(const CombinationLeaf& leaf, std::span<const TaskInstance> tasks,
                         const LeafEvaluatorOptions& options) {
  require_partition(leaf, tasks.size());
  const auto grids = all_grids(tasks);
  std::vector<BlockEvaluation> evaluated;
  evaluated.reserve(leaf.blocks.size());
  for (BlockMask b : leaf.blocks) evaluated.push_back(build_block(tasks, b, grids, options));
  std::vector<const BlockEvaluation*> ptrs;
  for (const auto& e : evaluated) ptrs.push_back(&e);
  return assemble(leaf, allocate(leaf, ptrs, options), tasks, ptrs, grids, options);
}

LeafEvaluator::LeafEvaluator(std::span<const TaskInstance> tasks, LeafEvaluatorOptions options)
    : tasks_(tasks), options_(std::move(options)), configs_(all_grids(tasks)) {}

const BlockEvaluation& LeafEvaluator::block(BlockMask mask) {
  auto it = blocks_.find(mask);
  if (it == blocks_.end()) it = blocks_.emplace(mask, build_block(tasks_, mask, configs_, options_)).first;
  return it->second;
}

const Allocation& LeafEvaluator::allocation(const CombinationLeaf& canonical) {
  if (auto it = leaves_.find(canonical.blocks); it != leaves_.end()) return it->second;
  require_partition(canonical, tasks_.size());
  std::vector<const BlockEvaluation*> ptrs;
  for (BlockMask b : canonical.blocks) ptrs.push_back(&block(b));
  return leaves_.emplace(canonical.blocks, allocate(canonical, ptrs, options_)).first->second;
}

double LeafEvaluator::value(const CombinationLeaf& leaf) {
  CombinationLeaf key = leaf;
  canonicalize(key);
  return allocation(key).total_utility;
}

LeafResult LeafEvaluator::result(const CombinationLeaf& leaf) {
  CombinationLeaf key = leaf;
  canonicalize(key);
  const Allocation alloc = allocation(key);
  std::vector<const BlockEvaluation*> ptrs;
  for (BlockMask b : key.blocks) ptrs.push_back(&block(b));
  return assemble(key, alloc, tasks_, ptrs, configs_, options_);
}

}  // namespace qram::concurrency
