#pragma once

#include <stdexcept>
#include <string>

namespace radbcs {

// All library failures derive from Error so callers can map them to exit
// codes without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: non-finite input, grid mismatch, asymmetric matrix.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Mathematically inadmissible request, e.g. odd angular momentum in 2D.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inconsistent construction parameters (grid, config file).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Bracket expansion for a critical temperature ran past the ceiling.
class NoTransition : public Error {
 public:
  using Error::Error;
};

// Iteration produced non-finite values.
class Divergence : public Error {
 public:
  using Error::Error;
};

// A state violates 0 <= Gamma <= 1 beyond round-off.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace radbcs
