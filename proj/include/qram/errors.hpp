#pragma once

#include <stdexcept>
#include <string>

namespace qram {

/// Invalid or incomplete configuration (unknown task type, bad grid, schema violation).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Members that cannot share a block under the active concurrency mode.
class CombinationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive routine refused an instance above its size guard.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qram
