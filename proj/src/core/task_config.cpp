#include "qram/core/task_config.hpp"

#include <algorithm>

namespace qram {

void QualityRecord::set(std::string_view name, double value) {
  auto it = std::find_if(measures_.begin(), measures_.end(), [&](const auto& m) { return m.name == name; });
  if (it != measures_.end()) {
    it->value = value;
  } else {
    measures_.push_back({name, value});
  }
}

std::optional<double> QualityRecord::get(std::string_view name) const {
  auto it = std::find_if(measures_.begin(), measures_.end(), [&](const auto& m) { return m.name == name; });
  if (it == measures_.end()) return std::nullopt;
  return it->value;
}

}  // namespace qram
