#pragma once

#include <stdexcept>
#include <string>

namespace splab {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A requested enumeration or materialization exceeds the configured budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A tail certificate was issued for an exponent that cannot be converted.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// psi vanishes on a block that carries mass and is not in the zero set.
class DivisionByZeroError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A modulus returned a negative or non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An experiment or oracle was called outside its stated hypotheses.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownSeriesError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace splab
