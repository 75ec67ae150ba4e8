#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gshift {

/// Polynomial on [-1, 1] stored by its coefficients in the Chebyshev basis of
/// the first kind. degree() is the index of the last stored coefficient, so a
/// stored trailing zero still counts toward the degree.
class ChebSeries {
 public:
  ChebSeries() = default;
  explicit ChebSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  static ChebSeries zero(std::size_t degree) { return ChebSeries(std::vector<double>(degree + 1, 0.0)); }

  /// Interpolant through values sampled at chebyshev_points(values.size()).
  static ChebSeries interpolate(std::span<const double> values);

  /// Converts monomial coefficients m[0] + m[1] x + ... to the Chebyshev basis.
  static ChebSeries from_monomial(std::span<const double> monomial);

  bool empty() const { return coeffs_.empty(); }
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::vector<double>& mutable_coeffs() { return coeffs_; }

  double operator()(double x) const;
  void evaluate(std::span<const double> x, std::span<double> out) const;

  ChebSeries& operator+=(const ChebSeries& other);
  ChebSeries& operator-=(const ChebSeries& other);
  ChebSeries& operator*=(double s);

  /// Copy truncated (or zero-padded) to the given degree.
  ChebSeries resized(std::size_t degree) const;

  double max_abs_coeff() const;

 private:
  std::vector<double> coeffs_;
};

ChebSeries operator+(ChebSeries a, const ChebSeries& b);
ChebSeries operator-(ChebSeries a, const ChebSeries& b);
ChebSeries operator*(double s, ChebSeries a);

/// First-kind Chebyshev points cos((j + 1/2) pi / n), j = 0..n-1 (descending).
std::vector<double> chebyshev_points(std::size_t n);

/// n >= 2 Chebyshev extreme points mapped to [lo, hi], ascending, endpoints included.
std::vector<double> chebyshev_extrema(std::size_t n, double lo = -1.0, double hi = 1.0);

/// Clenshaw-Curtis weights matching chebyshev_extrema(n, -1, 1).
std::vector<double> clenshaw_curtis_weights(std::size_t n);

}  // namespace gshift
