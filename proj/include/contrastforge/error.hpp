#pragma once

#include <stdexcept>
#include <string>

namespace contrastforge {

/// Input that parsed but violates a data contract (bad label, bad
/// probability vector, missing join key, ...). Maps to CLI exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem or network failure. Maps to CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace contrastforge
