#pragma once

// Independent reference computations and randomized property checks shared by
// the unit tests and the acceptance binary. Nothing here calls the code under
// test to produce an expected value.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qram/core/allocator.hpp"
#include "qram/core/frontier.hpp"

namespace qram::oracle {

/// Source tree root, for configs/ and tests/data/.
std::filesystem::path source_dir();

/// A-priori position variance of the one-axis NCV Kalman filter, obtained by
/// running the covariance recursion until it stops changing.
double riccati_prior_variance(double q, double dt, double r);

/// Partitions of an n-set into blocks of size <= 2 (telephone numbers).
std::size_t involution_number(std::size_t n);

/// Sort-based type-7 quantile.
double sorted_quantile(std::vector<double> values, double p);

/// Piecewise-linear value of the frontier at compound resource x (x within range).
double frontier_value_at(const Frontier& f, double x);

/// Empty when the frontier is a sound concave majorant of the points,
/// otherwise a description of the first violation.
std::string frontier_violation(const Frontier& f, std::span<const ResourcePoint> points, const CompoundWeights& w);

/// Random task: index 0 is the zero-resource off point.
std::vector<ResourcePoint> random_task(std::mt19937_64& rng, std::size_t configs, double max_resource,
                                       double grid_step = 0.0);

struct CheckResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  double worst = 0.0;  ///< check-specific magnitude (gap, relative error, ...)

  [[nodiscard]] bool ok() const { return cases > 0 && failures == 0; }
  void fail(const std::string& what);
};

/// Greedy vs exhaustive allocation on random instances (<= 4 tasks, <= 6
/// configs, 2 resources). worst is the largest shortfall exact - greedy.
CheckResult check_greedy_bound(std::size_t instances, std::uint64_t seed);
/// Concave scalar-direction instances with the budget on a breakpoint: greedy == exact.
CheckResult check_greedy_exact_on_breakpoints(std::size_t instances, std::uint64_t seed);
/// Enlarging the bounds never lowers the greedy utility. With one_direction
/// every resource vector is a multiple of one random direction.
CheckResult check_greedy_monotone(std::size_t instances, std::uint64_t seed, bool one_direction);

/// Concavity, soundness and determinism (including input order) of concave_frontier.
CheckResult check_frontiers(std::size_t sets, std::uint64_t seed);

/// Hand-evaluated tracking model values (resources, duration, weight, utility, quality).
CheckResult check_formulas();

/// steady_state_position_variance and track_error_model against the Riccati
/// iteration; worst is the largest relative error.
CheckResult check_track_error_oracle(std::size_t draws, std::uint64_t seed);

/// Leaf counts of enumerate_leaves with all pairs allowed, n = 1..max_n.
std::vector<std::size_t> pair_leaf_counts(std::size_t max_n);

struct MctsConvergence {
  std::size_t tasks = 0;
  std::size_t leaves = 0;
  std::size_t seeds = 0;
  std::size_t hits = 0;
  bool monotone = true;
  bool sound = true;  ///< returned utility equals the leaf's value
  [[nodiscard]] double frequency() const { return seeds == 0 ? 0.0 : static_cast<double>(hits) / seeds; }
};

/// Random leaf values on the all-pairs tree of n tasks, iterations = 20 * leaves.
MctsConvergence check_mcts_convergence(std::size_t tasks, std::size_t seeds, std::uint64_t value_seed);

}  // namespace qram::oracle
