#pragma once

#include <stdexcept>
#include <string>

namespace ppprelay {

/// Invalid or inconsistent user-supplied configuration.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A formula was asked to evaluate outside the domain it is defined on
/// (e.g. a free-space closed form with alpha != 2).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Base class for failures of a numerical procedure on valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : NumericalError(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

/// Catastrophic cancellation in an alternating binomial sum.
class InstabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A probability underflowed to zero where its logarithm is required.
class UnderflowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Relay selection was requested over an empty candidate set.
class NoCandidateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ppprelay
