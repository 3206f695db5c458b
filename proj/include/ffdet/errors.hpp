#pragma once

#include <stdexcept>

namespace ffdet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not fit together (variable count, matrix dimensions).
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A division that must be exact left a nonzero remainder, or divided by zero.
class ExactnessError : public Error {
 public:
  using Error::Error;
};

// Machine-word arithmetic left its representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Argument outside an operation's domain (n too small, r out of range, composite modulus, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The modulus planner could not satisfy its bound with the supplied primes.
class PlanError : public Error {
 public:
  using Error::Error;
};

// Internal consistency check failed.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace ffdet
