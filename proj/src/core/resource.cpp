#include "qram/core/resource.hpp"

#include <cmath>
#include <stdexcept>

namespace qram {

ResourceVector& ResourceVector::operator+=(const ResourceVector& rhs) {
  for (std::size_t j = 0; j < kResourceDims; ++j) values_[j] += rhs.values_[j];
  return *this;
}

ResourceVector& ResourceVector::operator-=(const ResourceVector& rhs) {
  for (std::size_t j = 0; j < kResourceDims; ++j) values_[j] -= rhs.values_[j];
  return *this;
}

bool ResourceVector::fits_within(const ResourceVector& bound) const {
  for (std::size_t j = 0; j < kResourceDims; ++j) {
    if (values_[j] > bound.values_[j] + kResourceTolerance) return false;
  }
  return true;
}

bool ResourceVector::is_zero() const {
  for (double v : values_) {
    if (v != 0.0) return false;
  }
  return true;
}

void validate_weights(const CompoundWeights& weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::domain_error("compound weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::domain_error("compound weights must sum to 1");
}

double compound_resource(const ResourceVector& r, const CompoundWeights& weights) {
  validate_weights(weights);
  double h = 0.0;
  for (std::size_t j = 0; j < kResourceDims; ++j) {
    if (r[j] < 0.0) throw std::domain_error("resource component is negative");
    h += weights[j] * r[j];
  }
  return h;
}

}  // namespace qram
