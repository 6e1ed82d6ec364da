#pragma once

namespace qram::models {

/// Non-weighted satisfaction of a quality measure: 0 when the minimum
/// requirement is not met, exactly 1 at (or beyond) the required level, and a
/// saturating exponential in between. Works for "lower is better" measures
/// too (quality_req < quality_min). shape > 0 controls the curvature.
double ramp_utility(double quality, double quality_min, double quality_req, double shape);

}  // namespace qram::models
