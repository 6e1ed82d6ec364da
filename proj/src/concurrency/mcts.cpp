#include "qram/concurrency/mcts.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

namespace qram::concurrency {

namespace {

struct Node {
  BlockMask assigned = 0;
  std::size_t parent = 0;
  std::vector<BlockMask> path;
  std::vector<BlockMask> untried;
  std::vector<std::size_t> children;
  std::size_t visits = 0;
  double total = 0.0;
  bool exhausted = false;
};

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

MctsResult mcts_search(const PartitionSpace& space, const LeafValueFn& value, const MctsOptions& options) {
  if (options.iterations < 1) throw std::invalid_argument("MCTS needs at least one iteration");
  std::mt19937_64 rng(options.seed);
  std::map<std::vector<BlockMask>, double> memo;
  MctsResult out;
  out.utility = -std::numeric_limits<double>::infinity();

  std::vector<Node> nodes(1);
  nodes[0].untried = space.children(0);
  nodes[0].exhausted = nodes[0].untried.empty();

  auto leaf_value = [&](const std::vector<BlockMask>& blocks) {
    if (auto it = memo.find(blocks); it != memo.end()) return it->second;
    CombinationLeaf leaf{blocks};
    if (!space.valid(leaf)) throw std::logic_error("search produced an invalid partition");
    const double v = value(leaf);
    memo.emplace(blocks, v);
    if (v > out.utility) {
      out.utility = v;
      out.leaf = std::move(leaf);
    }
    return v;
  };

  for (const auto& leaf : options.warm_start) {
    CombinationLeaf key = leaf;
    canonicalize(key);
    if (space.valid(key)) leaf_value(key.blocks);
  }

  if (nodes[0].exhausted) {
    // empty task set: the only leaf is the empty partition
    leaf_value({});
    out.best_trace.push_back(out.utility);
    out.iterations_run = 1;
    out.leaf_evaluations = 1;
    return out;
  }

  for (std::size_t it = 0; it < options.iterations && !nodes[0].exhausted; ++it) {
    // selection
    std::size_t cur = 0;
    while (nodes[cur].untried.empty() && !nodes[cur].children.empty()) {
      const double scale = out.utility > 0.0 ? out.utility : 1.0;
      const double log_n = std::log(static_cast<double>(nodes[cur].visits));
      std::size_t best = 0;
      double best_score = -std::numeric_limits<double>::infinity();
      for (std::size_t c : nodes[cur].children) {
        const Node& ch = nodes[c];
        if (ch.exhausted) continue;
        const double mean = ch.total / static_cast<double>(ch.visits) / scale;
        const double score = mean + options.exploration_c * std::sqrt(log_n / static_cast<double>(ch.visits));
        if (score > best_score) {
          best_score = score;
          best = c;
        }
      }
      cur = best;
    }

    // expansion
    if (!nodes[cur].untried.empty()) {
      auto& untried = nodes[cur].untried;
      const std::size_t k = pick(rng, untried.size());
      const BlockMask b = untried[k];
      untried[k] = untried.back();
      untried.pop_back();
      Node child;
      child.assigned = nodes[cur].assigned | b;
      child.parent = cur;
      child.path = nodes[cur].path;
      child.path.push_back(b);
      child.untried = space.children(child.assigned);
      nodes.push_back(std::move(child));
      const std::size_t id = nodes.size() - 1;
      nodes[cur].children.push_back(id);
      cur = id;
    }

    // rollout
    std::vector<BlockMask> blocks = nodes[cur].path;
    BlockMask assigned = nodes[cur].assigned;
    while (assigned != space.full()) {
      const auto options_here = space.children(assigned);
      const BlockMask b = options_here[pick(rng, options_here.size())];
      blocks.push_back(b);
      assigned |= b;
    }
    const double v = leaf_value(blocks);

    // backpropagation; a node is exhausted when nothing unexplored remains below it
    std::size_t n = cur;
    while (true) {
      Node& node = nodes[n];
      ++node.visits;
      node.total += v;
      if (node.untried.empty()) {
        bool all = true;
        for (std::size_t c : node.children) all = all && nodes[c].exhausted;
        node.exhausted = all;
      }
      if (n == 0) break;
      n = node.parent;
    }
    out.best_trace.push_back(out.utility);
    ++out.iterations_run;
  }
  out.leaf_evaluations = memo.size();
  return out;
}

MctsPlan mcts_search(std::span<const TaskInstance> tasks, const CombinationRule& rule, LeafEvaluator& evaluator,
                     const MctsOptions& options) {
  const PartitionSpace space(tasks, rule);
  MctsPlan plan;
  plan.search = mcts_search(
      space, [&](const CombinationLeaf& leaf) { return evaluator.value(leaf); }, options);
  plan.result = evaluator.result(plan.search.leaf);
  return plan;
}

}  // namespace qram::concurrency
