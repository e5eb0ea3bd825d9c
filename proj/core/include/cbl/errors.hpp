#pragma once

#include <stdexcept>
#include <string>

namespace cbl {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (e.g. |x| >= 1 for atanh).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operation needs an interaction that vanishes (J12 == 0).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Two roots fell inside one grid cell during solution counting.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

/// Parameters admit no critical coupling J12.
class NoCriticalPoint : public Error {
 public:
  using Error::Error;
};

/// Parameters fail the critical-point hypotheses.
class NotCritical : public Error {
 public:
  using Error::Error;
};

class DegenerateHessian : public Error {
 public:
  using Error::Error;
};

/// A limit coefficient that must be positive was not.
class NonPositiveCoefficient : public Error {
 public:
  using Error::Error;
};

/// Enumeration would exceed the configured lattice-point budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace cbl
