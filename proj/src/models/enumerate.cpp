#include "qram/models/enumerate.hpp"

#include <stdexcept>

#include "qram/errors.hpp"

namespace qram::models {

std::size_t ParameterGrid::cardinality() const {
  return n_az.size() * n_el.size() * prf_hz.size() * n_pulses.size() * pulse_width_s.size() * bandwidth_hz.size() *
         wavelength_m.size() * dwell_fraction.size();
}

std::vector<TaskConfiguration> ParameterGrid::points() const {
  if (cardinality() == 0) throw std::invalid_argument("parameter grid has an empty dimension");
  std::vector<TaskConfiguration> out;
  out.reserve(cardinality());
  for (int az : n_az)
    for (int el : n_el)
      for (double prf : prf_hz)
        for (int np : n_pulses)
          for (double tau : pulse_width_s)
            for (double bw : bandwidth_hz)
              for (double lambda : wavelength_m)
                for (double dwell : dwell_fraction) {
                  TaskConfiguration c;
                  c.n_az = az;
                  c.n_el = el;
                  c.prf_hz = prf;
                  c.n_pulses = np;
                  c.pulse_width_s = tau;
                  c.bandwidth_hz = bw;
                  c.wavelength_m = lambda;
                  c.dwell_fraction = dwell;
                  out.push_back(c);
                }
  return out;
}

std::vector<EvaluatedConfig> enumerate_configs(const TaskSpec& spec, const Environment& env) {
  const auto type = parse_task_type(spec.type);
  if (!type) throw ConfigError("unknown task type '" + spec.type + "'");
  const auto& model = model_for(*type);

  std::vector<EvaluatedConfig> out;
  out.push_back({TaskConfiguration::make_off(), {}, {}, 0.0, 0.0});
  for (const auto& c : spec.grid.points()) {
    if (!model.feasible(c, env)) continue;
    auto eval = model.evaluate(c, env, spec.params, 1.0);
    out.push_back({c, eval.resources, std::move(eval.quality), eval.utility, eval.nonweighted_utility});
  }
  return out;
}

ModelEvaluation evaluate(const TaskInstance& task, const TaskConfiguration& config, double quality_factor) {
  return model_for(task.type).evaluate(config, task.env, task.spec.params, quality_factor);
}

}  // namespace qram::models
