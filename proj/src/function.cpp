#include "gshift/function.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "gshift/error.hpp"

namespace gshift {

RealFunction::RealFunction(std::string id, Batch batch, std::optional<int> polynomial_degree)
    : id_(std::move(id)), batch_(std::move(batch)), degree_(polynomial_degree) {}

RealFunction RealFunction::from_scalar(std::string id, Scalar f,
                                       std::optional<int> polynomial_degree) {
  auto batch = [f = std::move(f)](std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
  };
  return RealFunction(std::move(id), std::move(batch), polynomial_degree);
}

RealFunction RealFunction::from_series(std::string id, ChebSeries series) {
  const int degree = static_cast<int>(series.degree());
  auto shared = std::make_shared<const ChebSeries>(std::move(series));
  auto batch = [shared](std::span<const double> x, std::span<double> out) {
    shared->evaluate(x, out);
  };
  return RealFunction(std::move(id), std::move(batch), degree);
}

RealFunction RealFunction::constant(double c) {
  std::ostringstream id;
  id << "const:" << c;
  auto batch = [c](std::span<const double>, std::span<double> out) {
    std::fill(out.begin(), out.end(), c);
  };
  return RealFunction(id.str(), std::move(batch), 0);
}

double RealFunction::operator()(double x) const {
  double out = 0.0;
  batch_(std::span<const double>(&x, 1), std::span<double>(&out, 1));
  return out;
}

void RealFunction::evaluate(std::span<const double> x, std::span<double> out) const {
  if (out.size() < x.size()) throw DomainError("output span shorter than input");
  batch_(x, out.first(x.size()));
}

RealFunction linear_combination(double a, const RealFunction& f, double b, const RealFunction& g) {
  auto batch = [a, f, b, g](std::span<const double> x, std::span<double> out) {
    std::vector<double> tmp(x.size());
    f.evaluate(x, out);
    g.evaluate(x, tmp);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * out[i] + b * tmp[i];
  };
  std::optional<int> degree;
  if (f.polynomial_degree() && g.polynomial_degree()) {
    degree = std::max(*f.polynomial_degree(), *g.polynomial_degree());
  }
  std::ostringstream id;
  id << a << "*(" << f.id() << ")+" << b << "*(" << g.id() << ")";
  return RealFunction(id.str(), std::move(batch), degree);
}

RealFunction scaled(double c, const RealFunction& f) {
  auto batch = [c, f](std::span<const double> x, std::span<double> out) {
    f.evaluate(x, out);
    for (double& v : out) v *= c;
  };
  std::ostringstream id;
  id << c << "*(" << f.id() << ")";
  return RealFunction(id.str(), std::move(batch), f.polynomial_degree());
}

}  // namespace gshift
