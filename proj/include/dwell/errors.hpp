#pragma once

#include <stdexcept>
#include <string>

namespace dwell {

// Malformed or dimensionally inconsistent input data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A function was evaluated outside the set where it is defined,
// e.g. the dual function at sigma <= sigma0 with a pole present.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A caller violated a documented precondition (e.g. singular B^T B
// passed to the canonical transform without reducing first).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Results that contradict the optimality theory they were derived from.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dwell
