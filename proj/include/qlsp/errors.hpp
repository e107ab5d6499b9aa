#pragma once

#include <stdexcept>
#include <string>

namespace qlsp {

// Bad arguments or inputs violating a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to meet its contract (non-convergence,
// rank deficiency, overflow of an iteration budget, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankDeficiencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegreeOverflowError : public NumericalError {
 public:
  DegreeOverflowError(const std::string& msg, int cap)
      : NumericalError(msg), degree_cap(cap) {}
  int degree_cap;
};

class PhaseSolveError : public NumericalError {
 public:
  PhaseSolveError(const std::string& msg, double residual)
      : NumericalError(msg), best_residual(residual) {}
  double best_residual;
};

class EstimationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PostSelectionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qlsp
