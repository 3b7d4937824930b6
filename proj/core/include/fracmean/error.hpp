#pragma once

#include <stdexcept>
#include <string>

namespace fracmean {

// Base of every error raised by the library. The CLI maps the concrete
// type onto an exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (log 0, Gamma pole, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A quadrature did not reach its tolerance within the refinement cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Operation preconditions violated (Im(alpha) = 0 on a route that needs
// decay, wrong support, integer order where a fractional one is required).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The requested absolute moment of the law does not exist.
class MomentError : public PreconditionError {
 public:
  MomentError(const std::string& what, double order)
      : PreconditionError(what), order_(order) {}
  double order() const noexcept { return order_; }

 private:
  double order_;
};

// Malformed user input (parameters, config files, complex literals).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracmean
