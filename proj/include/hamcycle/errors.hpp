#pragma once

#include <stdexcept>
#include <string>

namespace hamcycle {

// Base class for every error raised by the library. The CLI maps
// InvariantViolation to exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A query whose arguments fall outside the operation's domain
// (e.g. a subset larger than k, overlapping X and Y).
class InvalidQuery : public Error {
 public:
  using Error::Error;
};

// Inputs that violate a structural precondition (divisibility,
// non-perfect matchings, unmet hypotheses).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Exhaustive routines refuse instances beyond their documented size.
class SizeLimit : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Internal consistency check failed; indicates corrupt input objects or a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace hamcycle
