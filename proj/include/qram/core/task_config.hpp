#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qram/core/resource.hpp"

namespace qram {

/// One point of a task's discrete operational space. Every RF task on the
/// aperture is described by the same ordered parameter set; a task type reads
/// the parameters it uses and its grid pins the rest to a single value.
struct TaskConfiguration {
  bool off = false;               ///< the mandatory "task not executed" configuration
  int n_az = 0;                   ///< elements in azimuth
  int n_el = 0;                   ///< elements in elevation
  double prf_hz = 0.0;            ///< pulse repetition frequency
  int n_pulses = 0;               ///< integrated pulses
  double pulse_width_s = 0.0;     ///< tau
  double bandwidth_hz = 0.0;      ///< B
  double wavelength_m = 0.0;      ///< lambda
  double dwell_fraction = 0.0;    ///< epoch fraction for dwell-driven tasks (SAR, EW, comm, ...)

  [[nodiscard]] int elements() const { return n_az * n_el; }

  static TaskConfiguration make_off() {
    TaskConfiguration c;
    c.off = true;
    return c;
  }

  friend bool operator==(const TaskConfiguration&, const TaskConfiguration&) = default;
};

struct QualityMeasure {
  std::string_view name;
  double value = 0.0;
};

/// Named quality measures of one evaluated configuration. Names are static literals.
class QualityRecord {
 public:
  void set(std::string_view name, double value);
  [[nodiscard]] std::optional<double> get(std::string_view name) const;
  [[nodiscard]] const std::vector<QualityMeasure>& measures() const { return measures_; }

 private:
  std::vector<QualityMeasure> measures_;
};

/// A configuration joined with its resource vector, quality and utility.
struct EvaluatedConfig {
  TaskConfiguration config;
  ResourceVector resources;
  QualityRecord quality;
  double utility = 0.0;              ///< weighted utility used by the allocator
  double nonweighted_utility = 0.0;  ///< mission-independent satisfaction in [0, 1]
};

/// Utilities below this are treated as zero.
inline constexpr double kUtilityFloor = 1e-12;

inline double clamp_utility(double u) { return u < kUtilityFloor ? 0.0 : u; }

}  // namespace qram
