#include "gshift/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gshift/error.hpp"
#include "gshift/simd.hpp"

namespace gshift {

ChebSeries ChebSeries::interpolate(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw DomainError("cannot interpolate zero samples");
  // cos(k (2j+1) pi / (2n)) only depends on k(2j+1) mod 4n.
  const std::size_t period = 4 * n;
  std::vector<double> table(period);
  for (std::size_t i = 0; i < period; ++i) {
    table[i] = std::cos(std::numbers::pi * static_cast<double>(i) / (2.0 * static_cast<double>(n)));
  }
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += values[j] * table[(k * (2 * j + 1)) % period];
    c[k] = 2.0 * acc / static_cast<double>(n);
  }
  c[0] *= 0.5;
  return ChebSeries(std::move(c));
}

ChebSeries ChebSeries::from_monomial(std::span<const double> monomial) {
  if (monomial.empty()) return ChebSeries({0.0});
  // Horner in the Chebyshev basis: p <- p * x + m_k, using x T_0 = T_1 and
  // x T_k = (T_{k+1} + T_{k-1}) / 2.
  std::vector<double> p(monomial.size(), 0.0);
  std::size_t len = 1;
  p[0] = monomial.back();
  for (std::size_t i = monomial.size() - 1; i-- > 0;) {
    std::vector<double> q(len + 1, 0.0);
    for (std::size_t k = 0; k < len; ++k) {
      if (k == 0) {
        q[1] += p[0];
      } else {
        q[k + 1] += 0.5 * p[k];
        q[k - 1] += 0.5 * p[k];
      }
    }
    q[0] += monomial[i];
    std::copy(q.begin(), q.end(), p.begin());
    ++len;
  }
  return ChebSeries(std::move(p));
}

double ChebSeries::operator()(double x) const {
  double out = 0.0;
  simd::scalar_table().chebyshev_eval(coeffs_.data(), coeffs_.size(), &x, &out, 1);
  return out;
}

void ChebSeries::evaluate(std::span<const double> x, std::span<double> out) const {
  simd::chebyshev_eval(coeffs_, x, out);
}

ChebSeries& ChebSeries::operator+=(const ChebSeries& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

ChebSeries& ChebSeries::operator-=(const ChebSeries& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

ChebSeries& ChebSeries::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

ChebSeries ChebSeries::resized(std::size_t degree) const {
  std::vector<double> c(coeffs_);
  c.resize(degree + 1, 0.0);
  return ChebSeries(std::move(c));
}

double ChebSeries::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::fabs(c));
  return m;
}

ChebSeries operator+(ChebSeries a, const ChebSeries& b) { return a += b; }
ChebSeries operator-(ChebSeries a, const ChebSeries& b) { return a -= b; }
ChebSeries operator*(double s, ChebSeries a) { return a *= s; }

std::vector<double> chebyshev_points(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
  }
  return x;
}

std::vector<double> chebyshev_extrema(std::size_t n, double lo, double hi) {
  if (n < 2) throw DomainError("chebyshev_extrema needs at least 2 points");
  std::vector<double> x(n);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double m = static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    // -cos(j pi / m) ascending; sin form keeps the middle point exactly at `mid`.
    const double s = std::sin(std::numbers::pi * (static_cast<double>(j) - 0.5 * m) / m);
    x[j] = mid + half * s;
  }
  x.front() = lo;
  x.back() = hi;
  return x;
}

std::vector<double> clenshaw_curtis_weights(std::size_t n) {
  if (n < 2) throw DomainError("Clenshaw-Curtis needs at least 2 points");
  const std::size_t m = n - 1;
  std::vector<double> w(n, 0.0);
  const double md = static_cast<double>(m);
  for (std::size_t j = 0; j <= m; ++j) {
    const double theta = std::numbers::pi * static_cast<double>(j) / md;
    double s = 0.0;
    for (std::size_t k = 1; k <= m / 2; ++k) {
      const double b = (2 * k == m) ? 1.0 : 2.0;
      s += b * std::cos(2.0 * static_cast<double>(k) * theta) / (4.0 * static_cast<double>(k * k) - 1.0);
    }
    const double c = (j == 0 || j == m) ? 1.0 : 2.0;
    w[j] = c / md * (1.0 - s);
  }
  // Extrema are symmetric, so the ascending/descending order does not matter.
  return w;
}

}  // namespace gshift
