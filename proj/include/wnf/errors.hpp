#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wnf {

// Bad input or configuration. The CLI maps this to exit status 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Failure while computing (floor violation, blow-up). Exit status 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Density at or below the floor at a specific grid point.
class DomainError : public NumericalError {
 public:
  DomainError(const std::string& what, std::size_t index, double value)
      : NumericalError(what), index_(index), value_(value) {}
  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t index_;
  double value_;
};

}  // namespace wnf
