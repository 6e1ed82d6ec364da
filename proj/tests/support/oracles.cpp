#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qram/concurrency/mcts.hpp"
#include "qram/concurrency/partition.hpp"
#include "qram/models/radar.hpp"
#include "qram/models/tracking.hpp"

#ifndef QRAM_SOURCE_DIR
#error "QRAM_SOURCE_DIR must be defined"
#endif

namespace qram::oracle {

namespace {

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

std::string describe(const char* what, double got, double want) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": got " << got << ", want " << want;
  return os.str();
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<Frontier> frontiers_of(const std::vector<std::vector<ResourcePoint>>& tasks) {
  std::vector<Frontier> out;
  for (const auto& t : tasks) out.push_back(concave_frontier(t, kDefaultCompoundWeights));
  return out;
}

}  // namespace

std::filesystem::path source_dir() { return QRAM_SOURCE_DIR; }

void CheckResult::fail(const std::string& what) {
  if (failures == 0) first_failure = what;
  ++failures;
}

double riccati_prior_variance(double q, double dt, double r) {
  // [p00 p01; p01 p11] over (position, velocity)
  const double q00 = q * dt * dt * dt / 3.0, q01 = q * dt * dt / 2.0, q11 = q * dt;
  double p00 = 1e12, p01 = 0.0, p11 = 1e12;
  for (long it = 0; it < 50'000'000; ++it) {
    // measurement update of position
    const double s = p00 + r;
    const double u00 = p00 - p00 * p00 / s;
    const double u01 = p01 - p00 * p01 / s;
    const double u11 = p11 - p01 * p01 / s;
    // prediction
    const double n00 = u00 + 2.0 * dt * u01 + dt * dt * u11 + q00;
    const double n01 = u01 + dt * u11 + q01;
    const double n11 = u11 + q11;
    const bool settled = std::abs(n00 - p00) <= 1e-15 * n00 && std::abs(n11 - p11) <= 1e-15 * n11;
    p00 = n00;
    p01 = n01;
    p11 = n11;
    if (settled && it > 10) return p00;
  }
  throw std::runtime_error("Riccati iteration did not settle");
}

std::size_t involution_number(std::size_t n) {
  std::size_t a = 1, b = 1;  // I(0), I(1)
  if (n == 0) return a;
  for (std::size_t k = 2; k <= n; ++k) {
    const std::size_t c = b + (k - 1) * a;
    a = b;
    b = c;
  }
  return b;
}

double sorted_quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double frontier_value_at(const Frontier& f, double x) {
  const auto& p = f.points;
  for (std::size_t m = 1; m < p.size(); ++m) {
    if (x <= p[m].compound) {
      const double t = (x - p[m - 1].compound) / (p[m].compound - p[m - 1].compound);
      return p[m - 1].utility + t * (p[m].utility - p[m - 1].utility);
    }
  }
  return p.back().utility;
}

std::string frontier_violation(const Frontier& f, std::span<const ResourcePoint> points, const CompoundWeights& w) {
  const auto& p = f.points;
  if (p.empty()) return "empty frontier";
  if (p.front().compound != 0.0) return "first point is not at zero resource";
  double best_zero = 0.0;
  for (const auto& q : points) {
    const double h = w[0] * q.resources[0] + w[1] * q.resources[1];
    if (h == 0.0) best_zero = std::max(best_zero, q.utility < 1e-12 ? 0.0 : q.utility);
  }
  if (p.front().utility != best_zero) return describe("start utility", p.front().utility, best_zero);

  for (std::size_t m = 0; m < p.size(); ++m) {
    if (p[m].config_index >= points.size()) return "config index out of range";
    const auto& src = points[p[m].config_index];
    const double h = w[0] * src.resources[0] + w[1] * src.resources[1];
    if (!close_rel(h, p[m].compound, 1e-15) || src.utility != p[m].utility) return "point is not an input point";
    if (m == 0) continue;
    if (!(p[m].compound > p[m - 1].compound) || !(p[m].utility > p[m - 1].utility)) return "not strictly increasing";
    if (m + 1 < p.size()) {
      const double s1 = (p[m].utility - p[m - 1].utility) / (p[m].compound - p[m - 1].compound);
      const double s2 = (p[m + 1].utility - p[m].utility) / (p[m + 1].compound - p[m].compound);
      if (!(s1 > s2)) return describe("slopes not strictly decreasing", s2, s1);
    }
  }

  // brute-force majorant: nothing strictly above the interpolant or beyond its end
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double h = w[0] * points[i].resources[0] + w[1] * points[i].resources[1];
    const double u = points[i].utility;
    const double bound = frontier_value_at(f, std::min(h, p.back().compound));
    if (u > bound + 1e-12 * std::max(1.0, bound)) {
      std::ostringstream os;
      os << "input point " << i << " (" << h << ", " << u << ") above the frontier value " << bound;
      return os.str();
    }
  }
  return {};
}

std::vector<ResourcePoint> random_task(std::mt19937_64& rng, std::size_t configs, double max_resource,
                                       double grid_step) {
  auto draw = [&](double hi) {
    double v = uniform(rng, 0.0, hi);
    if (grid_step > 0.0) v = std::round(v / grid_step) * grid_step;
    return v;
  };
  std::vector<ResourcePoint> out{{ResourceVector{}, 0.0}};
  for (std::size_t c = 1; c < configs; ++c) {
    ResourceVector r{draw(max_resource), draw(max_resource)};
    out.push_back({r, draw(1.0)});
  }
  return out;
}

CheckResult check_greedy_bound(std::size_t instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CheckResult res;
  for (std::size_t k = 0; k < instances; ++k) {
    const std::size_t n = pick(rng, 1, 4);
    std::vector<std::vector<ResourcePoint>> tasks;
    for (std::size_t i = 0; i < n; ++i) tasks.push_back(random_task(rng, pick(rng, 1, 6), 0.7));
    const ResourceVector bounds{uniform(rng, 0.1, 1.2), uniform(rng, 0.1, 1.2)};
    const auto frontiers = frontiers_of(tasks);
    const Allocation greedy = allocate_greedy(frontiers, bounds, kDefaultCompoundWeights);
    const Allocation exact = allocate_exact(tasks, bounds);
    ++res.cases;

    // recompute the greedy totals from the chosen configurations
    ResourceVector used;
    double utility = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      used += tasks[i][greedy.config_index[i]].resources;
      utility += tasks[i][greedy.config_index[i]].utility;
    }
    const double slack = max_frontier_step(frontiers);
    const double gap = exact.total_utility - greedy.total_utility;
    res.worst = std::max(res.worst, gap);
    std::ostringstream os;
    os << "instance " << k;
    if (!used.fits_within(bounds)) {
      res.fail(os.str() + ": greedy exceeds the bounds");
    } else if (!close_rel(utility, greedy.total_utility, 1e-12) && std::abs(utility - greedy.total_utility) > 1e-12) {
      res.fail(os.str() + ": " + describe("greedy total", greedy.total_utility, utility));
    } else if (gap > slack + 1e-12) {
      res.fail(os.str() + ": " + describe("exact - greedy exceeds largest step", gap, slack));
    }
  }
  return res;
}

CheckResult check_greedy_exact_on_breakpoints(std::size_t instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CheckResult res;
  for (std::size_t k = 0; k < instances; ++k) {
    const ResourceVector dir{uniform(rng, 0.2, 1.0), uniform(rng, 0.2, 1.0)};
    const std::size_t n = pick(rng, 1, 4);
    struct Step {
      double ratio;
      ResourceVector delta;
      double gain;
    };
    std::vector<Step> steps;
    std::vector<std::vector<ResourcePoint>> tasks;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t m = pick(rng, 1, 5);
      std::vector<double> slopes;
      for (std::size_t s = 0; s < m; ++s) slopes.push_back(uniform(rng, 0.1, 5.0));
      std::sort(slopes.rbegin(), slopes.rend());
      std::vector<ResourcePoint> pts{{ResourceVector{}, 0.0}};
      double a = 0.0, u = 0.0;
      for (double slope : slopes) {
        const double da = uniform(rng, 0.02, 0.3);
        const ResourceVector delta{da * dir[0], da * dir[1]};
        const double du = slope * da;
        a += da;
        u += du;
        pts.push_back({ResourceVector{a * dir[0], a * dir[1]}, u});
        steps.push_back({slope, delta, du});
        // a dominated interior configuration below the chord
        pts.push_back({ResourceVector{a * dir[0], a * dir[1]}, u * uniform(rng, 0.3, 0.95)});
      }
      tasks.push_back(std::move(pts));
    }
    // oracle greedy order: all steps by decreasing ratio (per-task order is implied by concavity)
    std::sort(steps.begin(), steps.end(), [](const Step& x, const Step& y) { return x.ratio > y.ratio; });
    const std::size_t prefix = pick(rng, 1, steps.size());
    ResourceVector budget;
    double expected = 0.0;
    for (std::size_t s = 0; s < prefix; ++s) {
      budget += steps[s].delta;
      expected += steps[s].gain;
    }
    const auto frontiers = frontiers_of(tasks);
    const Allocation greedy = allocate_greedy(frontiers, budget, kDefaultCompoundWeights);
    const Allocation exact = allocate_exact(tasks, budget);
    ++res.cases;
    const double gap = std::abs(exact.total_utility - greedy.total_utility);
    res.worst = std::max(res.worst, gap);
    std::ostringstream os;
    os << "instance " << k << ": ";
    if (!close_rel(greedy.total_utility, exact.total_utility, 1e-9)) {
      res.fail(os.str() + describe("greedy vs exact", greedy.total_utility, exact.total_utility));
    } else if (!close_rel(exact.total_utility, expected, 1e-9)) {
      res.fail(os.str() + describe("exact vs breakpoint prefix", exact.total_utility, expected));
    }
  }
  return res;
}

CheckResult check_greedy_monotone(std::size_t instances, std::uint64_t seed, bool one_direction) {
  std::mt19937_64 rng(seed);
  CheckResult res;
  for (std::size_t k = 0; k < instances; ++k) {
    const std::size_t n = pick(rng, 1, 4);
    const ResourceVector dir{uniform(rng, 0.2, 1.0), uniform(rng, 0.2, 1.0)};
    std::vector<std::vector<ResourcePoint>> tasks;
    for (std::size_t i = 0; i < n; ++i) {
      tasks.push_back(random_task(rng, pick(rng, 1, 6), 0.7));
      if (!one_direction) continue;
      for (auto& p : tasks.back()) {
        const double a = p.resources[0];
        p.resources = {a * dir[0], a * dir[1]};
      }
    }
    const auto frontiers = frontiers_of(tasks);
    ResourceVector bounds{uniform(rng, 0.05, 0.6), uniform(rng, 0.05, 0.6)};
    double previous = allocate_greedy(frontiers, bounds, kDefaultCompoundWeights).total_utility;
    for (int grow = 0; grow < 5; ++grow) {
      bounds += ResourceVector{uniform(rng, 0.0, 0.3), uniform(rng, 0.0, 0.3)};
      const double u = allocate_greedy(frontiers, bounds, kDefaultCompoundWeights).total_utility;
      ++res.cases;
      res.worst = std::max(res.worst, previous - u);
      if (u < previous - 1e-12) {
        std::ostringstream os;
        os << "instance " << k << " step " << grow << ": " << describe("utility after enlarging", u, previous);
        res.fail(os.str());
      }
      previous = std::max(previous, u);
    }
  }
  return res;
}

CheckResult check_frontiers(std::size_t sets, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CheckResult res;
  for (std::size_t k = 0; k < sets; ++k) {
    // coarse grid in every other set forces duplicate resources and utilities
    const double step = k % 2 == 0 ? 0.0 : 0.1;
    auto points = random_task(rng, pick(rng, 1, 14), 1.0, step);
    const CompoundWeights w = k % 3 == 0 ? kDefaultCompoundWeights : CompoundWeights{0.3, 0.7};
    const Frontier f = concave_frontier(points, w);
    ++res.cases;
    std::ostringstream os;
    os << "set " << k << ": ";
    if (auto v = frontier_violation(f, points, w); !v.empty()) {
      res.fail(os.str() + v);
      continue;
    }
    const Frontier again = concave_frontier(points, w);
    bool same = again.size() == f.size();
    for (std::size_t m = 0; same && m < f.size(); ++m) {
      same = again.points[m].compound == f.points[m].compound && again.points[m].utility == f.points[m].utility &&
             again.points[m].config_index == f.points[m].config_index;
    }
    if (!same) {
      res.fail(os.str() + "repeated call differs");
      continue;
    }
    auto shuffled = points;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const Frontier perm = concave_frontier(shuffled, w);
    same = perm.size() == f.size();
    for (std::size_t m = 0; same && m < f.size(); ++m) {
      same = perm.points[m].compound == f.points[m].compound && perm.points[m].utility == f.points[m].utility;
    }
    if (!same) res.fail(os.str() + "input order changes the frontier");
  }
  return res;
}

CheckResult check_formulas() {
  using namespace qram::models;
  CheckResult res;
  auto expect = [&](const char* what, double got, double want) {
    ++res.cases;
    const double err = std::abs(got - want) / std::max(std::abs(want), 1e-300);
    if (want != 0.0) res.worst = std::max(res.worst, err);
    if (want == 0.0 ? got != 0.0 : err > 1e-9) res.fail(describe(what, got, want));
  };

  Environment env;
  env.system.n_az_max = 4;
  env.system.n_el_max = 8;
  env.system.epoch_s = 1.0;

  TaskConfiguration c;
  c.n_az = 4;
  c.n_el = 8;
  c.prf_hz = 1000.0;
  c.n_pulses = 10;
  c.pulse_width_s = 10e-6;
  c.bandwidth_hz = 5e6;
  c.wavelength_m = 0.03;
  env.task.range_m = 150e3;

  // element count n_az * n_el over the available 32
  expect("element fraction", tracking_resources(c, env).elements(), 1.0);
  // (n_p - 1)/PRF + tau + 2R/c
  const double t_task = 9.0 / 1000.0 + 1e-5 + 2.0 * 150e3 / 2.99792458e8;
  expect("T_task", track_task_duration_s(c, 150e3), t_task);
  expect("T_task with c = 3e8", 9.0 / 1000.0 + 1e-5 + 2.0 * 150e3 / 3e8, 10.01e-3);
  ++res.cases;
  if (std::abs(track_task_duration_s(c, 150e3) - 10.01e-3) > 1e-6) res.fail("T_task is not about 10.01 ms");
  expect("time fraction", tracking_resources(c, env).time(), t_task);
  env.system.epoch_s = 0.5;
  expect("time fraction at 0.5 s epoch", tracking_resources(c, env).time(), t_task / 0.5);
  env.system.epoch_s = 1.0;

  TaskConfiguration tiny = c;
  tiny.n_pulses = 1;
  tiny.pulse_width_s = 0.0;
  expect("T_task degenerate limit", track_task_duration_s(tiny, 0.0), 0.0);

  // affine in n_p with slope 1/PRF
  for (int n = 1; n <= 64; ++n) {
    TaskConfiguration a = c, b = c, d = c;
    a.n_pulses = n;
    b.n_pulses = n + 1;
    d.n_pulses = n + 2;
    const double ta = track_task_duration_s(a, 150e3);
    const double tb = track_task_duration_s(b, 150e3);
    const double td = track_task_duration_s(d, 150e3);
    ++res.cases;
    if (std::abs((tb - ta) - 1.0 / c.prf_hz) > 1e-12) res.fail(describe("T_task slope", tb - ta, 1.0 / c.prf_hz));
    ++res.cases;
    if (std::abs((td - tb) - (tb - ta)) > 1e-12) res.fail("T_task second difference is not zero");
  }

  // w = K_t v / (R + K_R)
  UtilityParams up;
  up.k_range_m = 20e3;
  up.beta_m = 1000.0;
  up.weight = 1.0;
  up.min_radial_velocity_mps = 0.0;
  env.task.priority = 1.0;
  env.task.radial_velocity_mps = 300.0;
  env.task.range_m = 100e3;
  expect("w", track_weight(env, up), 0.0025);

  // u = w (1 - exp(-beta q)) with w = 1
  env.task.radial_velocity_mps = 1000.0;
  env.task.range_m = 500.0;
  up.k_range_m = 500.0;
  expect("w = 1", track_weight(env, up), 1.0);
  expect("u at q = 1/500", tracking_utility(1.0 / 500.0, env, up), 0.8646647167633873);
  expect("u at q = 0", tracking_utility(0.0, env, up), 0.0);
  ++res.cases;
  try {
    tracking_utility(-1e-3, env, up);
    res.fail("negative quality accepted");
  } catch (const std::domain_error&) {
  }

  // bounded by w and strictly increasing in q
  env.task.radial_velocity_mps = 250.0;
  env.task.range_m = 30e3;
  const double w = track_weight(env, up);
  double last = -1.0;
  for (int i = 0; i <= 400; ++i) {
    const double q = i * 2.5e-5;
    const double u = tracking_utility(q, env, up);
    ++res.cases;
    if (!(u >= 0.0 && u < w && u > last)) res.fail(describe("u bounds / monotonicity at q", q, u));
    last = u;
  }

  // q = 1 / e_t, including the cap
  Environment tenv;
  tenv.task.range_m = 30e3;
  tenv.task.process_noise = 5.0;
  tenv.task.rcs_m2 = 5.0;
  TaskConfiguration tc;
  tc.n_az = 8;
  tc.n_el = 16;
  tc.prf_hz = 2000.0;
  tc.n_pulses = 16;
  tc.pulse_width_s = 10e-6;
  tc.bandwidth_hz = 5e6;
  tc.wavelength_m = 0.03;
  const auto rec = tracking_quality(tc, tenv, 1.0);
  expect("q = 1/e_t", *rec.get("quality"), 1.0 / *rec.get("track_error"));
  const auto capped = tracking_quality(TaskConfiguration::make_off(), tenv, 1.0);
  expect("capped error", *capped.get("track_error"), tenv.system.track_error_cap_m);
  expect("floor quality", *capped.get("quality"), 1.0 / tenv.system.track_error_cap_m);
  expect("q at e_t = 500", 1.0 / 500.0, 0.002);

  expect("compound (0.2, 0.4)", compound_resource({0.2, 0.4}, {0.5, 0.5}), 0.3);
  expect("compound zero", compound_resource({0.0, 0.0}, {0.3, 0.7}), 0.0);
  expect("compound basis", compound_resource({1.0, 0.0}, {0.3, 0.7}), 0.3);
  return res;
}

CheckResult check_track_error_oracle(std::size_t draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CheckResult res;
  auto log_uniform = [&](double lo, double hi) { return std::exp(uniform(rng, std::log(lo), std::log(hi))); };
  for (std::size_t k = 0; k < draws; ++k) {
    const double q = log_uniform(0.1, 100.0);
    const double dt = log_uniform(0.2, 5.0);
    const double sigma = log_uniform(1.0, 300.0);
    const double got = models::steady_state_position_variance(q, dt, sigma * sigma);
    const double want = riccati_prior_variance(q, dt, sigma * sigma);
    const double err = std::abs(got - want) / want;
    res.worst = std::max(res.worst, err);
    ++res.cases;
    if (err > 1e-6) {
      std::ostringstream os;
      os << "draw " << k << " (q " << q << ", dt " << dt << ", sigma " << sigma << "): ";
      res.fail(os.str() + describe("variance", got, want));
    }
  }

  // the composite expected error: three independent axes along the line of sight
  models::Environment env;
  env.task.rcs_m2 = 5.0;
  TaskConfiguration c;
  c.prf_hz = 2000.0;
  c.pulse_width_s = 10e-6;
  c.wavelength_m = 0.03;
  for (std::size_t k = 0; k < draws; ++k) {
    c.n_az = 1 << pick(rng, 2, 4);
    c.n_el = 1 << pick(rng, 2, 4);
    c.n_pulses = static_cast<int>(pick(rng, 8, 64));
    c.bandwidth_hz = log_uniform(1e6, 5e7);
    env.task.range_m = log_uniform(5e3, 40e3);
    env.task.process_noise = log_uniform(0.5, 50.0);
    const double dt = log_uniform(0.5, 4.0);
    const double snr = models::snr_db(c, env);
    if (snr < env.system.snr_floor_db) continue;
    const auto s = models::measurement_sigmas(c, env, snr);
    double var = 0.0;
    for (double sig : {s.range_m, s.azimuth_m, s.elevation_m}) {
      var += riccati_prior_variance(env.task.process_noise, dt, sig * sig);
    }
    const double want = std::min(std::sqrt(var), env.system.track_error_cap_m);
    const double got = models::track_error_model(c, env, dt);
    const double err = std::abs(got - want) / want;
    res.worst = std::max(res.worst, err);
    ++res.cases;
    if (err > 1e-6) res.fail(describe("track_error_model", got, want));
  }
  return res;
}

std::vector<std::size_t> pair_leaf_counts(std::size_t max_n) {
  std::vector<std::size_t> counts;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<concurrency::BlockMask> blocks;
    for (std::size_t i = 0; i < n; ++i) {
      blocks.push_back(concurrency::BlockMask{1} << i);
      for (std::size_t j = i + 1; j < n; ++j) {
        blocks.push_back((concurrency::BlockMask{1} << i) | (concurrency::BlockMask{1} << j));
      }
    }
    const concurrency::PartitionSpace space(n, blocks);
    counts.push_back(concurrency::enumerate_leaves(space).size());
  }
  return counts;
}

MctsConvergence check_mcts_convergence(std::size_t tasks, std::size_t seeds, std::uint64_t value_seed) {
  using namespace qram::concurrency;
  std::vector<BlockMask> blocks;
  for (std::size_t i = 0; i < tasks; ++i) {
    blocks.push_back(BlockMask{1} << i);
    for (std::size_t j = i + 1; j < tasks; ++j) blocks.push_back((BlockMask{1} << i) | (BlockMask{1} << j));
  }
  const PartitionSpace space(tasks, blocks);
  const auto leaves = enumerate_leaves(space);

  std::mt19937_64 rng(value_seed);
  std::map<std::vector<BlockMask>, double> table;
  double best = -1.0;
  std::vector<BlockMask> best_leaf;
  for (const auto& leaf : leaves) {
    const double v = uniform(rng, 0.0, 10.0);
    table[leaf.blocks] = v;
    if (v > best) {
      best = v;
      best_leaf = leaf.blocks;
    }
  }

  MctsConvergence out;
  out.tasks = tasks;
  out.leaves = leaves.size();
  const LeafValueFn value = [&](const CombinationLeaf& leaf) { return table.at(leaf.blocks); };
  for (std::size_t s = 1; s <= seeds; ++s) {
    MctsOptions options;
    options.iterations = 20 * leaves.size();
    options.seed = s;
    const MctsResult r = mcts_search(space, value, options);
    ++out.seeds;
    if (r.leaf.blocks == best_leaf) ++out.hits;
    if (r.utility != table.at(r.leaf.blocks)) out.sound = false;
    for (std::size_t i = 1; i < r.best_trace.size(); ++i) {
      if (r.best_trace[i] < r.best_trace[i - 1]) out.monotone = false;
    }
  }
  return out;
}

}  // namespace qram::oracle
