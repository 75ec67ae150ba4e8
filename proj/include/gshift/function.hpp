#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "gshift/chebyshev.hpp"

namespace gshift {

/// A real function on [-1, 1] evaluated in batches.
///
/// Batches are what the shift quadrature produces (all arguments R for one
/// x at once), so implementations that can vectorize should override the
/// batch path. Copies share the underlying callable.
class RealFunction {
 public:
  using Batch = std::function<void(std::span<const double>, std::span<double>)>;
  using Scalar = std::function<double(double)>;

  RealFunction() = default;
  RealFunction(std::string id, Batch batch, std::optional<int> polynomial_degree = std::nullopt);

  static RealFunction from_scalar(std::string id, Scalar f,
                                  std::optional<int> polynomial_degree = std::nullopt);
  static RealFunction from_series(std::string id, ChebSeries series);
  static RealFunction constant(double c);

  double operator()(double x) const;
  void evaluate(std::span<const double> x, std::span<double> out) const;

  const std::string& id() const { return id_; }
  /// Set when the function is known to be an algebraic polynomial.
  std::optional<int> polynomial_degree() const { return degree_; }
  explicit operator bool() const { return static_cast<bool>(batch_); }

 private:
  std::string id_;
  Batch batch_;
  std::optional<int> degree_;
};

/// a*f + b*g, evaluated pointwise.
RealFunction linear_combination(double a, const RealFunction& f, double b, const RealFunction& g);
RealFunction scaled(double c, const RealFunction& f);

}  // namespace gshift
