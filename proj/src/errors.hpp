#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace dipole_noise {

/// Invalid input: bad quantum numbers, out-of-range arguments, bad grids.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Velocity field or trajectory requested on the polar axis with m != 0.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Quantum potential requested on (or within node_eps of) a nodal surface.
class NodeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Gamma-function pole hit by a closed-form Legendre evaluation.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A closed form was requested for a state that has none.
class UnsupportedStateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Adaptive quadrature could not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_error)
      : std::runtime_error(what + " (last error estimate " + format(last_error) + ")"),
        last_error_(last_error) {}

  double last_error() const noexcept { return last_error_; }

 private:
  static std::string format(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
  }

 private:
  double last_error_;
};

/// A sampled spectrum stops before its tail model applies.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dipole_noise
