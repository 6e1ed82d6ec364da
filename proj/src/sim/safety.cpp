#include "qram/sim/safety.hpp"

#include <algorithm>
#include <sstream>

namespace qram::sim {

namespace {

constexpr double kTolerance = 1e-9;
constexpr std::size_t kMaxFindings = 20;

void note(SafetyReport& r, double t, const std::string& what) {
  if (r.findings.size() >= kMaxFindings) return;
  std::ostringstream os;
  os << "t=" << t << ": " << what;
  r.findings.push_back(os.str());
}

double overlap(double a0, double a1, double b0, double b1) { return std::min(a1, b1) - std::max(a0, b0); }

}  // namespace

void SafetyReport::merge(const SafetyReport& other) {
  epochs += other.epochs;
  entries += other.entries;
  resource_violations += other.resource_violations;
  duty_violations += other.duty_violations;
  emcon_violations += other.emcon_violations;
  for (const auto& f : other.findings) {
    if (findings.size() < kMaxFindings) findings.push_back(f);
  }
}

SafetyReport scan_epoch(const EpochResult& epoch, double epoch_s, double duty_limit) {
  SafetyReport r;
  r.epochs = 1;
  const auto& entries = epoch.timeline.entries;
  r.entries = entries.size();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const std::string id = e.task_ids.empty() ? "?" : e.task_ids.front();
    if (e.start_s < -kTolerance || e.end_s() > epoch_s + kTolerance || e.duration_s < 0.0 ||
        e.element_offset < -kTolerance || e.element_offset + e.element_fraction > 1.0 + kTolerance) {
      ++r.resource_violations;
      note(r, epoch.t, id + " leaves the epoch or the aperture");
    }
    if (e.duty > duty_limit + kTolerance) {
      ++r.duty_violations;
      note(r, epoch.t, id + " exceeds the duty limit");
    }
    if (epoch.emcon == EmconLevel::Bravo && e.radiates) {
      ++r.emcon_violations;
      note(r, epoch.t, id + " radiates under EMCON");
    }
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const auto& f = entries[j];
      const bool in_time = overlap(e.start_s, e.end_s(), f.start_s, f.end_s()) > kTolerance;
      const bool in_aperture = overlap(e.element_offset, e.element_offset + e.element_fraction, f.element_offset,
                                       f.element_offset + f.element_fraction) > kTolerance;
      if (in_time && in_aperture) {
        ++r.resource_violations;
        note(r, epoch.t, id + " overlaps " + (f.task_ids.empty() ? "?" : f.task_ids.front()));
      }
    }
  }
  return r;
}

SafetyReport scan_run(const RunResult& run, double epoch_s, double duty_limit) {
  SafetyReport r;
  for (const auto& e : run.epochs) r.merge(scan_epoch(e, epoch_s, duty_limit));
  return r;
}

}  // namespace qram::sim
