#pragma once

#include <stdexcept>
#include <string>

namespace wallforge {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NonPositiveValueError : public Error {
 public:
  using Error::Error;
};

class UnsortedBreakpointsError : public Error {
 public:
  using Error::Error;
};

class DomainTooSmallError : public Error {
 public:
  using Error::Error;
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(int iterations, double residual)
      : Error("solver did not converge after " + std::to_string(iterations) +
              " iterations (residual " + std::to_string(residual) + ")"),
        iterations(iterations),
        residual(residual) {}
  int iterations;
  double residual;
};

class MonotonicityViolationError : public Error {
 public:
  using Error::Error;
};

class ProfileNotConvergedError : public Error {
 public:
  using Error::Error;
};

class EigenNoConvergenceError : public Error {
 public:
  using Error::Error;
};

class NonPositivePsiError : public Error {
 public:
  using Error::Error;
};

class NotTangentialError : public Error {
 public:
  using Error::Error;
};

class NoSignChangeError : public Error {
 public:
  using Error::Error;
};

class ConfigParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace wallforge
