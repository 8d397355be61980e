#pragma once

#include <stdexcept>
#include <string>

namespace eb {

// Base class for all library errors. Subclasses split into two families:
// input/validation problems (CLI exit code 2) and numerical failures
// detected at run time (CLI exit code 3).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

// -- validation family -------------------------------------------------------

class BadParams : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class TailNotDecayed : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class OutOfDomain : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class OutOfRange : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class RegionViolation : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// -- numerical family --------------------------------------------------------

class NonConvergence : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class AssumptionViolated : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class RangeTooNarrow : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class OnContour : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class DegenerateReflection : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NotAvailable : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class WakeReachedBoundary : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class StepUnderflow : public NumericalError {
public:
  using NumericalError::NumericalError;
};

}  // namespace eb
