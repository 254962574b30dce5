#pragma once

#include <stdexcept>
#include <string>

namespace fracvisco {

/// Base of every numerical failure raised by the library. The CLI maps these
/// to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Series summation did not settle within the term budget.
class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Adaptive quadrature ran out of panels before reaching its tolerance.
class QuadratureFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The exponential-sum escalation loop hit its node budget.
class BudgetExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Conjugate gradients stagnated or hit the iteration cap.
class SolveFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Argument outside an operation's domain (bad mesh size, alpha out of range...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fracvisco
