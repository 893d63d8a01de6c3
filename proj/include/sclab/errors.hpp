#pragma once

#include <stdexcept>
#include <string>

namespace sclab {

// Base of every error raised by the library. Each subclass maps to one CLI
// exit code (see tools/sclab.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied input outside an operation's domain (empty sample, k > m/2,
// non-realizable corpus entry, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A component broke a contract it promised: a selection map emitted bad
// indices, or a learner is not a weak learner on the given sample.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// An enumeration or retry budget ran out before an answer was certified.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace sclab
