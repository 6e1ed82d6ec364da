#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace qram {

/// Number of resource types managed by the allocator: antenna elements and timeline.
inline constexpr std::size_t kResourceDims = 2;

/// Tolerance used for all resource-bound comparisons.
inline constexpr double kResourceTolerance = 1e-9;

/// Resource requirement or bound. Component 0 is the fraction of antenna elements
/// occupied, component 1 the fraction of the allocation epoch occupied.
class ResourceVector {
 public:
  ResourceVector() = default;
  ResourceVector(double elements, double time) : values_{elements, time} {}

  [[nodiscard]] double elements() const { return values_[0]; }
  [[nodiscard]] double time() const { return values_[1]; }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  [[nodiscard]] std::span<const double, kResourceDims> values() const { return values_; }

  ResourceVector& operator+=(const ResourceVector& rhs);
  ResourceVector& operator-=(const ResourceVector& rhs);
  friend ResourceVector operator+(ResourceVector lhs, const ResourceVector& rhs) { return lhs += rhs; }
  friend ResourceVector operator-(ResourceVector lhs, const ResourceVector& rhs) { return lhs -= rhs; }
  friend bool operator==(const ResourceVector&, const ResourceVector&) = default;

  /// True when every component is <= the bound's (within kResourceTolerance).
  [[nodiscard]] bool fits_within(const ResourceVector& bound) const;
  [[nodiscard]] bool is_zero() const;

 private:
  std::array<double, kResourceDims> values_{};
};

/// Weights of the compound resource; nonnegative and summing to one.
using CompoundWeights = std::array<double, kResourceDims>;

inline constexpr CompoundWeights kDefaultCompoundWeights{0.5, 0.5};

/// Throws std::domain_error unless the weights are nonnegative and sum to 1.
void validate_weights(const CompoundWeights& weights);

/// Scalar resource measure used to rank allocation steps: sum_j w_j * r_j.
/// Throws std::domain_error on a negative component or invalid weights.
double compound_resource(const ResourceVector& r, const CompoundWeights& weights);

}  // namespace qram
