#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace greedy_opt {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad parameters, malformed configs, precondition violations.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// NaN/Inf or overflow produced while evaluating an objective.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

class UnsupportedOperation : public Error {
 public:
  explicit UnsupportedOperation(const std::string& msg) : Error(msg) {}
};

// Raised by the adaptive gradient greedy algorithm when the energy decrease
// promised by the majorant does not materialize.
class MajorantViolation : public Error {
 public:
  MajorantViolation(const std::string& msg, std::size_t iteration, double lhs,
                    double rhs)
      : Error(msg), iteration_(iteration), lhs_(lhs), rhs_(rhs) {}

  std::size_t iteration() const noexcept { return iteration_; }
  double lhs() const noexcept { return lhs_; }
  double rhs() const noexcept { return rhs_; }

 private:
  std::size_t iteration_;
  double lhs_;
  double rhs_;
};

}  // namespace greedy_opt
