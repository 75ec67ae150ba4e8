#pragma once

#include <stdexcept>
#include <string>

namespace gshift {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the mathematical domain of the operation
/// (Jacobi indices <= -1, u outside [-1,1], nonpositive fit data, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The shift kernel was asked for |x| = 1 or y = -1, where its prefactor is singular.
class SingularArgumentError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative method failed to converge.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A user function returned a non-finite value at a quadrature or grid node.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double node)
      : Error(what + " at x=" + std::to_string(node)), node_(node) {}
  double node() const noexcept { return node_; }

 private:
  double node_;
};

/// Input that makes a ratio or fit meaningless (zero norm, too few points).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace gshift
