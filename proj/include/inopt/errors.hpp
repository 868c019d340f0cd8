#pragma once

#include <stdexcept>
#include <string>

namespace inopt {

// Thrown when an infinite noise-tail sum is requested for a schedule whose
// squared magnitudes do not form a convergent series.
class NotSummableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite values encountered inside a pure numeric operation.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed trace/report/constants file.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad run configuration (unknown kinds, invalid pairing, missing keys).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace inopt
