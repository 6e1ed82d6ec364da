// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"

#include "qram/io/commands.hpp"
#include "qram/io/config_loader.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

template <class F>
void criterion(int id, const char* name, double limit_s, F&& body) {
  const auto t0 = Clock::now();
  Verdict v = body();
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0.0 && secs >= limit_s) {
    v.pass = false;
    v.detail += "; over the " + std::to_string(limit_s) + " s budget";
  }
  if (!v.pass) ++failures;
  std::printf("%s %2d %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const qram::io::ModeReport& mode(const std::vector<qram::io::ModeReport>& r, const char* name) {
  for (const auto& m : r) {
    if (m.summary.mode == name) return m;
  }
  throw std::runtime_error(std::string("mode missing: ") + name);
}

}  // namespace

int main() {
  using namespace qram;

  criterion(1, "allocator oracle equivalence", 5.0, [] {
    const auto bound = oracle::check_greedy_bound(200, 1);
    const auto exact = oracle::check_greedy_exact_on_breakpoints(200, 2);
    Verdict v{bound.ok() && exact.ok(), ""};
    v.detail = std::to_string(bound.cases - bound.failures) + "/" + std::to_string(bound.cases) +
               " within one step of exact, " + std::to_string(exact.cases - exact.failures) + "/" +
               std::to_string(exact.cases) + " breakpoint instances equal";
    if (!bound.ok()) v.detail += "; " + bound.first_failure;
    if (!exact.ok()) v.detail += "; " + exact.first_failure;
    return v;
  });

  criterion(2, "frontier properties", 5.0, [] {
    const auto r = oracle::check_frontiers(1000, 3);
    Verdict v{r.ok(), std::to_string(r.cases) + " point sets concave, sound and deterministic"};
    if (!r.ok()) v.detail = std::to_string(r.failures) + " failures; " + r.first_failure;
    return v;
  });

  criterion(3, "formula conformance", 0.0, [] {
    const auto r = oracle::check_formulas();
    Verdict v{r.ok(), std::to_string(r.cases) + " values, worst relative error " + fmt("%.3g", r.worst)};
    if (!r.ok()) v.detail += "; " + r.first_failure;
    return v;
  });

  criterion(4, "track-error oracle", 0.0, [] {
    const auto r = oracle::check_track_error_oracle(100, 4);
    Verdict v{r.ok(), std::to_string(r.cases) + " draws, worst relative error " + fmt("%.3g", r.worst)};
    if (!r.ok()) v.detail += "; " + r.first_failure;
    return v;
  });

  criterion(5, "tree counts", 1.0, [] {
    const auto counts = oracle::pair_leaf_counts(5);
    const std::vector<std::size_t> want{1, 2, 4, 10, 26};
    std::string s;
    for (auto c : counts) s += (s.empty() ? "" : ", ") + std::to_string(c);
    return Verdict{counts == want, "leaf counts " + s};
  });

  criterion(6, "MCTS convergence", 30.0, [] {
    Verdict v{true, ""};
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto c = oracle::check_mcts_convergence(n, 100, 100 + n);
      v.pass = v.pass && c.frequency() >= 0.95 && c.monotone && c.sound;
      v.detail += (n > 1 ? ", " : "") + std::string("n=") + std::to_string(n) + " " +
                  fmt("%.2f", c.frequency()) + (c.monotone ? "" : " non-monotone") + (c.sound ? "" : " unsound");
    }
    return v;
  });

  // criteria 7 to 10 share one batch: the reference scenario, four modes, seeds 1..25
  const auto config = io::load_scenario_or_throw(oracle::source_dir() / "configs" / "reference.yaml");
  std::vector<std::uint64_t> seeds(25);
  std::iota(seeds.begin(), seeds.end(), 1);
  std::vector<io::ModeReport> reports;
  criterion(7, "SAR-window track error", 300.0, [&] {
    reports = io::compare_modes(config, seeds);
    const double std_err = mode(reports, "standard").summary.sar_window_track_error.mean;
    const double il_err = mode(reports, "interleaved").summary.sar_window_track_error.mean;
    const double mo_err = mode(reports, "multioperation").summary.sar_window_track_error.mean;
    Verdict v{std_err >= 3.0 * mo_err && il_err < std_err && il_err > mo_err, ""};
    v.detail = "standard " + fmt("%.1f", std_err) + " m, interleaved " + fmt("%.1f", il_err) +
               " m, multioperation " + fmt("%.1f", mo_err) + " m, ratio " + fmt("%.2f", std_err / mo_err);
    return v;
  });

  criterion(8, "total track error", 0.0, [&] {
    const double s = mode(reports, "standard").summary.scenario_track_error.median;
    const double m = mode(reports, "multioperation").summary.scenario_track_error.median;
    return Verdict{m <= 0.8 * s, "median multioperation " + fmt("%.1f", m) + " m vs standard " + fmt("%.1f", s) +
                                     " m (factor " + fmt("%.3f", m / s) + ")"};
  });

  criterion(9, "utility ordering", 0.0, [&] {
    const auto& s = mode(reports, "standard").summary.cumulative_utility;
    const auto& il = mode(reports, "interleaved").summary.cumulative_utility;
    const auto& mf = mode(reports, "multifunction").summary.cumulative_utility;
    const auto& mo = mode(reports, "multioperation").summary.cumulative_utility;
    const bool order = mo.median > il.median && il.median > std::max(s.median, mf.median);
    const bool variance = mf.std <= s.std;
    return Verdict{order && variance, "medians MO " + fmt("%.2f", mo.median) + " > IL " + fmt("%.2f", il.median) +
                                          " > max(STD " + fmt("%.2f", s.median) + ", MF " + fmt("%.2f", mf.median) +
                                          "); std MF " + fmt("%.3f", mf.std) + " vs STD " + fmt("%.3f", s.std)};
  });

  criterion(10, "safety invariants", 0.0, [&] {
    std::size_t epochs = 0, entries = 0, res = 0, duty = 0, emcon = 0;
    std::string first;
    for (const auto& m : reports) {
      epochs += m.safety.epochs;
      entries += m.safety.entries;
      res += m.safety.resource_violations;
      duty += m.safety.duty_violations;
      emcon += m.safety.emcon_violations;
      if (first.empty() && !m.safety.findings.empty()) first = m.safety.findings.front();
    }
    Verdict v{res + duty + emcon == 0 && epochs > 0, ""};
    v.detail = std::to_string(epochs) + " epochs, " + std::to_string(entries) + " entries scanned; resource " +
               std::to_string(res) + ", duty " + std::to_string(duty) + ", EMCON " + std::to_string(emcon);
    if (!first.empty()) v.detail += "; " + first;
    return v;
  });

  return failures == 0 ? 0 : 1;
}
