#pragma once

#include <stdexcept>
#include <string>

namespace psr {

/// Malformed or invalid input data (file contents, database, parameters).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public DataError {
 public:
  explicit DimensionMismatch(const std::string& what = "dimension mismatch")
      : DataError(what) {}
};

/// Raised by adjust_probs when 1 - p falls below the divisor guard.
class DegenerateDivisor : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation refused to start because it would exceed a resource guard.
class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace psr
