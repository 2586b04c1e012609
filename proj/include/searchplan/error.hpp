#pragma once

#include <stdexcept>
#include <string>

namespace searchplan {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent dimensions or arguments passed between modules.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A scenario or input file violates a documented invariant. `field` is the
// dotted path of the offending entry (e.g. "missions[1].rcs_m2").
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Parse or filesystem failure.
class IoError : public Error {
 public:
  using Error::Error;
};

// The candidate dwell set cannot cover the surveillance grid, or a set cover
// instance has a row with no covering column.
class UncoverableError : public Error {
 public:
  using Error::Error;
};

}  // namespace searchplan
