#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "qram/io/config_loader.hpp"
#include "qram/models/tracking.hpp"
#include "qram/sim/kalman.hpp"
#include "qram/sim/metrics.hpp"
#include "qram/sim/safety.hpp"
#include "qram/sim/scheduler.hpp"
#include "qram/sim/simulator.hpp"
#include "qram/sim/trajectory.hpp"

using namespace qram;
using namespace qram::sim;

namespace {

const ScenarioConfig& reference() {
  static const ScenarioConfig c = io::load_scenario_or_throw(oracle::source_dir() / "configs" / "reference.yaml");
  return c;
}

const ScenarioConfig& short_scenario() {
  static const ScenarioConfig c = io::load_scenario_or_throw(oracle::source_dir() / "tests" / "data" / "short.yaml");
  return c;
}

// one stationary target straight ahead of a hovering platform, one track task
// with a single configuration
constexpr const char* kStaticTrack = R"(schema_version: 1
name: static_track
duration_s: 200
system:
  calibration: {reference_snr_db: 30}
randomization: {time_jitter_s: 0, start_offset_m: 0}
tracker: {init_position_sigma_m: 100, init_velocity_sigma_mps: 10}
platform:
  id: p
  start: [0, 0, 5000]
  randomize_start: false
  legs: [{duration_s: 200, velocity: [0, 0, 0]}]
entities:
  - id: tgt
    start: [0, 30000, 5000]
    randomize_start: false
    rcs_m2: 5
    process_noise: 0.5
    legs: [{duration_s: 200, velocity: [0, 0, 0]}]
templates:
  - id: track
    type: aa_track
    params:
      track: {k_range_m: 20000, beta_m: 500, weight: 1, min_radial_velocity_mps: 50}
    grid:
      n_az: [8]
      n_el: [8]
      prf_hz: [2000]
      n_pulses: [16]
      pulse_width_s: [1.0e-5]
      bandwidth_hz: [5.0e6]
      wavelength_m: [0.03]
requests:
  - {id: trk, template: track, target: tgt, t_start: 0, jitter: false}
)";

const ScenarioConfig& static_track() {
  static const ScenarioConfig c = [] {
    auto r = io::parse_scenario(kStaticTrack, "static_track");
    for (const auto& i : r.issues) MESSAGE(i.format());
    REQUIRE(r.ok());
    return *r.config;
  }();
  return c;
}

double epoch_utility(const EpochResult& e) { return e.total_utility(); }

}  // namespace

TEST_CASE("runs are deterministic per seed") {
  for (auto mode : {ConcurrencyMode::Standard, ConcurrencyMode::Multioperation}) {
    const auto a = run_scenario(short_scenario(), mode, 7);
    const auto b = run_scenario(short_scenario(), mode, 7);
    REQUIRE(a.epochs.size() == b.epochs.size());
    CHECK(a.epochs.size() == short_scenario().epoch_count());
    for (std::size_t k = 0; k < a.epochs.size(); ++k) {
      CHECK(epoch_utility(a.epochs[k]) == epoch_utility(b.epochs[k]));
      CHECK(a.epochs[k].mean_track_error() == b.epochs[k].mean_track_error());
      CHECK(a.epochs[k].blocks == b.epochs[k].blocks);
    }
  }
  // a different seed moves the world
  const auto c = run_scenario(short_scenario(), ConcurrencyMode::Standard, 8);
  const auto a = run_scenario(short_scenario(), ConcurrencyMode::Standard, 7);
  double diff = 0.0;
  for (std::size_t k = 0; k < a.epochs.size(); ++k) diff += std::abs(a.epochs[k].mean_track_error() - c.epochs[k].mean_track_error());
  CHECK(diff > 0.0);
}

TEST_CASE("an epoch without requests is empty") {
  ScenarioConfig cfg = static_track();
  cfg.requests.clear();
  cfg.duration_s = 3;
  const auto run = run_scenario(cfg, ConcurrencyMode::Multioperation, 1);
  REQUIRE(run.epochs.size() == 3);
  for (const auto& e : run.epochs) {
    CHECK(e.active_tasks.empty());
    CHECK(e.timeline.entries.empty());
    CHECK(e.total_utility() == 0.0);
    CHECK(e.predicted_utility == 0.0);
  }
}

TEST_CASE("reference scenario timelines") {
  const auto std_run = run_scenario(reference(), ConcurrencyMode::Standard, 1);
  const auto mo_run = run_scenario(reference(), ConcurrencyMode::Multioperation, 1);
  std::size_t sar_epochs = 0;
  for (const auto& e : std_run.epochs) {
    bool sar = false, trk = false;
    for (const auto& entry : e.timeline.entries) {
      for (auto t : entry.types) {
        sar = sar || t == models::TaskType::StripmapSar;
        trk = trk || t == models::TaskType::AirTrack;
      }
    }
    // the whole-epoch SAR dwell leaves no room for track updates
    if (sar) {
      ++sar_epochs;
      CHECK_FALSE(trk);
    }
  }
  CHECK(sar_epochs > 0);

  for (const auto* run : {&std_run, &mo_run}) {
    for (const auto& e : run->epochs) {
      if (e.t < 480.0) continue;
      CHECK(e.emcon == models::EmconLevel::Bravo);
      for (const auto& entry : e.timeline.entries) CHECK_FALSE(entry.radiates);
    }
    const auto s = scan_run(*run, reference().epoch_s(), reference().system.duty_limit);
    INFO((s.findings.empty() ? std::string() : s.findings.front()));
    CHECK(s.clean());
    CHECK(s.epochs == 550);
  }
}

TEST_CASE("Kalman covariance converges to the steady-state variance") {
  const double q = 3.0, dt = 1.0, r = 400.0;
  Mat6 p0 = Mat6::Identity() * 1e4;
  NcvKalman kf(Vec6::Zero(), p0, q);
  const Mat3 rm = Mat3::Identity() * r;
  for (int k = 0; k < 500; ++k) {
    kf.predict(dt);
    kf.update(Vec3::Zero(), rm);
  }
  kf.predict(dt);
  const double want = oracle::riccati_prior_variance(q, dt, r);
  CHECK(kf.covariance()(0, 0) == doctest::Approx(want).epsilon(1e-9));
  CHECK(kf.covariance()(2, 2) == doctest::Approx(want).epsilon(1e-9));
  CHECK(kf.position_rms() == doctest::Approx(std::sqrt(3.0 * want)).epsilon(1e-9));
  CHECK(models::steady_state_position_variance(q, dt, r) == doctest::Approx(want).epsilon(1e-9));

  // prediction alone only grows the uncertainty
  double last = kf.position_rms();
  for (int k = 0; k < 20; ++k) {
    CHECK(kf.predicted_position_rms(1.0) > last);
    kf.predict(1.0);
    CHECK(kf.position_rms() > last);
    last = kf.position_rms();
  }

  // transition and noise by hand
  const Mat6 f = NcvKalman::transition(2.0);
  CHECK(f(0, 3) == 2.0);
  CHECK(f(3, 3) == 1.0);
  const Mat6 qn = NcvKalman::process_noise(3.0, 2.0);
  CHECK(qn(0, 0) == doctest::Approx(3.0 * 8.0 / 3.0));
  CHECK(qn(0, 3) == doctest::Approx(3.0 * 2.0));
  CHECK(qn(3, 3) == doctest::Approx(6.0));
}

TEST_CASE("measurement covariance follows the line of sight") {
  models::MeasurementSigmas s{10.0, 50.0, 80.0};
  const Mat3 r = measurement_covariance(Vec3::Zero(), Vec3(0.0, 1000.0, 0.0), s);
  // looking north: range along y
  CHECK(r(1, 1) == doctest::Approx(100.0));
  CHECK(r.trace() == doctest::Approx(100.0 + 2500.0 + 6400.0));
  CHECK((r - r.transpose()).norm() < 1e-9);
}

TEST_CASE("trajectories") {
  const Trajectory tr(Vec3(0, 0, 0), {{10.0, Vec3(1, 0, 0)}, {5.0, Vec3(0, 2, 0)}});
  CHECK((tr.position(10.0) - Vec3(10, 0, 0)).norm() < 1e-12);
  CHECK((tr.position(15.0) - Vec3(10, 10, 0)).norm() < 1e-12);
  CHECK((tr.position(20.0) - Vec3(10, 20, 0)).norm() < 1e-12);
  CHECK((tr.velocity(12.0) - Vec3(0, 2, 0)).norm() < 1e-12);

  std::mt19937_64 rng(1);
  TruthState truth(tr, 0.0);
  for (int k = 0; k < 15; ++k) truth.advance(1.0, rng);
  CHECK((truth.position() - Vec3(10, 10, 0)).norm() < 1e-9);

  const auto g = relative_geometry(Vec3::Zero(), Vec3::Zero(), Vec3(0, 3000, 4000), Vec3(0, 30, 40));
  CHECK(g.range_m == doctest::Approx(5000.0));
  CHECK(g.radial_velocity_mps == doctest::Approx(50.0));
  CHECK(g.azimuth_rad == doctest::Approx(0.0));
  CHECK(g.elevation_rad == doctest::Approx(std::atan2(4000.0, 3000.0)));
}

TEST_CASE("simulated track error agrees with the model") {
  const auto& cfg = static_track();
  const auto& tmpl = cfg.templates.front().spec;
  models::Environment env;
  env.system = cfg.system;
  env.task.range_m = 30000.0;
  env.task.rcs_m2 = 5.0;
  env.task.process_noise = 0.5;
  const auto configs = models::enumerate_configs(tmpl, env);
  REQUIRE(configs.size() == 2);
  const double model = models::track_error_model(configs[1].config, env, cfg.epoch_s());

  double sq = 0.0;
  std::size_t n = 0;
  double filter_rms = 0.0;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto run = run_scenario(cfg, ConcurrencyMode::Standard, seed);
    for (const auto& e : run.epochs) {
      if (e.t < 50.0 || e.errors.empty()) continue;
      sq += e.errors.front().error_m * e.errors.front().error_m;
      filter_rms = e.errors.front().predicted_rms_m;
      ++n;
    }
  }
  const double realized = std::sqrt(sq / static_cast<double>(n));
  MESSAGE("model " << model << " m, realized RMS " << realized << " m, filter " << filter_rms << " m");
  CHECK(std::abs(realized - model) <= 0.3 * model);
  CHECK(std::abs(filter_rms - model) <= 0.05 * model);
}

TEST_CASE("scheduler placement") {
  using models::TaskType;
  auto task = [](const std::string& id) {
    models::TaskInstance t;
    t.id = id;
    t.type = TaskType::DataLink;
    t.spec.type = "comm_datalink";
    t.env.task.range_m = 50e3;
    return t;
  };
  const std::vector<models::TaskInstance> tasks{task("a"), task("b")};
  auto member = [](double elements, double time) {
    models::ModelEvaluation e;
    e.resources = {elements, time};
    e.utility = 1.0;
    return e;
  };
  auto chosen = [&](std::vector<std::size_t> members, double elements, double time) {
    concurrency::ChosenBlock c;
    c.off = false;
    c.members = members;
    c.detail.resources = {elements, time};
    c.detail.utility = 1.0;
    for (std::size_t m = 0; m < members.size(); ++m) {
      c.detail.configs.emplace_back();
      c.detail.members.push_back(member(elements / static_cast<double>(members.size()), time));
    }
    return c;
  };

  // two full-aperture blocks of 30% each run one after the other
  concurrency::LeafResult seq;
  seq.chosen = {chosen({0}, 1.0, 0.3), chosen({1}, 1.0, 0.3)};
  const auto t1 = schedule_timeline(seq, tasks, ConcurrencyMode::Interleaved, 1.0, kDefaultCompoundWeights);
  REQUIRE(t1.entries.size() == 2);
  CHECK(t1.entries[0].start_s == 0.0);
  CHECK(t1.entries[1].start_s == doctest::Approx(0.3));
  CHECK(t1.entries[1].end_s() == doctest::Approx(0.6));
  CHECK(t1.drops.empty());

  // two half apertures in one multioperation block run side by side
  concurrency::LeafResult par;
  par.chosen = {chosen({0, 1}, 1.0, 0.5)};
  const auto t2 = schedule_timeline(par, tasks, ConcurrencyMode::Multioperation, 1.0, kDefaultCompoundWeights);
  REQUIRE(t2.entries.size() == 2);
  CHECK(t2.entries[0].start_s == t2.entries[1].start_s);
  CHECK(t2.entries[0].element_offset == 0.0);
  CHECK(t2.entries[1].element_offset == doctest::Approx(0.5));

  // a block that overruns the epoch is dropped
  concurrency::LeafResult over;
  over.chosen = {chosen({0}, 1.0, 0.7), chosen({1}, 1.0, 0.7)};
  const auto t3 = schedule_timeline(over, tasks, ConcurrencyMode::Standard, 1.0, kDefaultCompoundWeights);
  CHECK(t3.entries.size() == 1);
  CHECK(t3.drops.size() == 1);
  CHECK(t3.dropped(t3.drops.front().block));
}

TEST_CASE("safety scan flags violations") {
  EpochResult e;
  e.t = 3.0;
  TimelineEntry a;
  a.task_ids = {"a"};
  a.start_s = 0.0;
  a.duration_s = 0.5;
  a.element_fraction = 1.0;
  TimelineEntry b = a;
  b.task_ids = {"b"};
  b.start_s = 0.4;
  e.timeline.entries = {a, b};
  auto r = scan_epoch(e, 1.0, 0.25);
  CHECK(r.resource_violations == 1);
  CHECK_FALSE(r.clean());

  b.start_s = 0.5;
  b.duty = 0.3;
  b.radiates = true;
  e.timeline.entries = {a, b};
  e.emcon = models::EmconLevel::Bravo;
  r = scan_epoch(e, 1.0, 0.25);
  CHECK(r.resource_violations == 0);
  CHECK(r.duty_violations == 1);
  CHECK(r.emcon_violations == 1);
  CHECK(r.findings.size() == 2);

  b.duration_s = 0.6;
  b.duty = 0.0;
  b.radiates = false;
  e.timeline.entries = {a, b};
  CHECK(scan_epoch(e, 1.0, 0.25).resource_violations == 1);
}

TEST_CASE("quantiles and summaries") {
  std::mt19937_64 rng(17);
  std::lognormal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(1000);
  for (auto& x : v) x = d(rng);
  for (double p : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.999, 1.0}) {
    CHECK(quantile(v, p) == doctest::Approx(oracle::sorted_quantile(v, p)).epsilon(1e-14));
  }
  const Summary s = summarize(v);
  CHECK(s.n == 1000);
  CHECK(s.median == doctest::Approx(oracle::sorted_quantile(v, 0.5)));
  CHECK(s.q1 <= s.median);
  CHECK(s.median <= s.q3);
  CHECK(s.whisker_low >= s.min);
  CHECK(s.whisker_high <= s.max);
  CHECK(s.whisker_high <= s.q3 + 1.5 * (s.q3 - s.q1));
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / 1000.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  CHECK(s.std == doctest::Approx(std::sqrt(ss / 999.0)));

  const std::vector<double> one{4.2};
  const Summary s1 = summarize(one);
  CHECK(s1.std == 0.0);
  CHECK(s1.median == 4.2);
  CHECK(s1.q1 == 4.2);
  CHECK(s1.whisker_high == 4.2);

  const std::vector<double> flat(30, 2.5);
  CHECK(summarize(flat).std == 0.0);
  CHECK(summarize(flat).q3 == 2.5);

  CHECK_THROWS_AS(summarize(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(quantile(v, 1.5), std::invalid_argument);

  // per-epoch bins
  const std::vector<double> times{0.0, 1.0};
  const std::vector<std::vector<double>> series{{1.0, 10.0}, {2.0, 20.0}, {3.0, 30.0}, {4.0, 40.0}};
  const auto bins = aggregate_bins(times, series);
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].median == doctest::Approx(2.5));
  CHECK(bins[1].q3 == doctest::Approx(oracle::sorted_quantile({10, 20, 30, 40}, 0.75)));
}

TEST_CASE("batch metrics") {
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const auto batch = run_batch(short_scenario(), ConcurrencyMode::Interleaved, seeds);
  REQUIRE(batch.runs.size() == 3);
  CHECK(batch.safety.clean());
  for (const auto& m : batch.runs) {
    double sum = 0.0;
    for (double u : m.total_utility) sum += u;
    CHECK(m.cumulative_utility == doctest::Approx(sum));
    CHECK(m.times.size() == short_scenario().epoch_count());
  }
  const auto summary = aggregate_runs("interleaved", batch.runs);
  CHECK(summary.runs == 3);
  std::vector<double> cu;
  for (const auto& m : batch.runs) cu.push_back(m.cumulative_utility);
  CHECK(summary.cumulative_utility.median == doctest::Approx(oracle::sorted_quantile(cu, 0.5)));
  CHECK(summary.track_error_over_time.size() == short_scenario().epoch_count());
  CHECK_THROWS_AS(aggregate_runs("x", std::span<const MetricsSeries>{}), std::invalid_argument);
}
