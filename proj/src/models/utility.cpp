#include "qram/models/utility.hpp"

#include <cmath>
#include <stdexcept>

namespace qram::models {

double ramp_utility(double quality, double quality_min, double quality_req, double shape) {
  if (quality_min == quality_req) throw std::invalid_argument("quality_min and quality_req coincide");
  if (!(shape > 0.0)) throw std::invalid_argument("ramp shape must be positive");
  const double x = (quality - quality_min) / (quality_req - quality_min);
  if (!(x >= 0.0)) return 0.0;  // also catches NaN
  if (x >= 1.0) return 1.0;
  return (1.0 - std::exp(-shape * x)) / (1.0 - std::exp(-shape));
}

}  // namespace qram::models
