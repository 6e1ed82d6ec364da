#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qram/sim/simulator.hpp"

namespace qram::sim {

/// Post-hoc scan of executed timelines.
struct SafetyReport {
  std::size_t epochs = 0;
  std::size_t entries = 0;
  std::size_t resource_violations = 0;  ///< outside the epoch or aperture, or overlapping occupancy
  std::size_t duty_violations = 0;
  std::size_t emcon_violations = 0;     ///< radar or jamming emission under BRAVO
  std::vector<std::string> findings;    ///< first few, for diagnostics

  [[nodiscard]] bool clean() const { return resource_violations + duty_violations + emcon_violations == 0; }
  void merge(const SafetyReport& other);
};

SafetyReport scan_epoch(const EpochResult& epoch, double epoch_s, double duty_limit);
SafetyReport scan_run(const RunResult& run, double epoch_s, double duty_limit);

}  // namespace qram::sim
