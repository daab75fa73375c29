#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ddflow {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

// Raised by the integrators when a state entry becomes NaN or infinite.
class NonFiniteState : public Error {
 public:
  NonFiniteState(const std::string& what, double time) : Error(what), time_(time) {}
  [[nodiscard]] double time() const noexcept { return time_; }

 private:
  double time_;
};

// Invalid user input; `field` names the offending option or token source.
class SpecError : public Error {
 public:
  SpecError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace ddflow
