#pragma once

#include <stdexcept>
#include <string>

namespace thetarep {

/// Argument outside the mathematical domain of a function (eps <= 0, S(x) <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or quadrature failed to reach its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model parameters violate a precondition (positivity, admissibility, minimality).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Caller supplied incomplete or inconsistent input data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The leaf is degenerate (F(t) <= 0 somewhere with a0 > 0).
class UnsupportedSurfaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructed object failed its own post-construction verification.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace thetarep
