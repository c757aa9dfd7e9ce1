#pragma once

#include <stdexcept>
#include <string>

namespace horoflow {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// A GradedAlgebra failed validation (antisymmetry, grading or Jacobi).
class AlgebraError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

// A proven bound was violated numerically, or a precondition of a monitor
// was not met.
class MonitorError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace horoflow
