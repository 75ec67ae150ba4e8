#include "gshift/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <utility>

#include "gshift/error.hpp"

namespace gshift {

void validate(const JacobiParams& params) {
  if (!(params.a > -1.0) || !(params.b > -1.0)) {
    std::ostringstream msg;
    msg << "Jacobi parameters (" << params.a << ", " << params.b << ") must both exceed -1";
    throw DomainError(msg.str());
  }
}

namespace {

// Returns (P_n, P_{n-1}) of the classical family at x.
std::pair<double, double> classical_pair(double a, double b, int n, double x) {
  double p_prev = 1.0;
  if (n == 0) return {1.0, 0.0};
  double p = 0.5 * ((a + b + 2.0) * x + (a - b));
  for (int k = 2; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + a + b;
    const double c1 = 2.0 * kk * (kk + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * s;
    const double next = (c2 * p - c3 * p_prev) / c1;
    p_prev = p;
    p = next;
  }
  return {p, p_prev};
}

}  // namespace

double eval_jacobi_classical(const JacobiParams& params, int n, double x) {
  validate(params);
  if (n < 0) throw DomainError("Jacobi degree must be nonnegative");
  return classical_pair(params.a, params.b, n, x).first;
}

double jacobi_value_at_one(const JacobiParams& params, int n) {
  validate(params);
  double v = 1.0;
  for (int k = 1; k <= n; ++k) v *= (static_cast<double>(k) + params.a) / static_cast<double>(k);
  return v;
}

double eval_jacobi(const JacobiParams& params, int n, double x) {
  validate(params);
  if (n < 0) throw DomainError("Jacobi degree must be nonnegative");
  if (n == 0 || x == 1.0) return 1.0;
  return classical_pair(params.a, params.b, n, x).first / jacobi_value_at_one(params, n);
}

double jacobi_weight_integral(const JacobiParams& params) {
  validate(params);
  const double a = params.a, b = params.b;
  return std::exp((a + b + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                  std::lgamma(a + b + 2.0));
}

double jacobi_norm_squared(const JacobiParams& params, int n) {
  validate(params);
  if (n == 0) return jacobi_weight_integral(params);
  const double a = params.a, b = params.b, nn = static_cast<double>(n);
  // Classical h_n = 2^{a+b+1} G(n+a+1) G(n+b+1) / ((2n+a+b+1) n! G(n+a+b+1)).
  const double log_h = (a + b + 1.0) * std::numbers::ln2 + std::lgamma(nn + a + 1.0) +
                       std::lgamma(nn + b + 1.0) - std::log(2.0 * nn + a + b + 1.0) -
                       std::lgamma(nn + 1.0) - std::lgamma(nn + a + b + 1.0);
  const double at_one = jacobi_value_at_one(params, n);
  return std::exp(log_h) / (at_one * at_one);
}

double QuadratureRule::integrate(const RealFunction& f) const {
  std::vector<double> v(nodes.size());
  f.evaluate(nodes, v);
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw EvaluationError("non-finite integrand", nodes[i]);
    acc += weights[i] * v[i];
  }
  return acc;
}

QuadratureRule gauss_jacobi_rule(const JacobiParams& params, std::size_t m) {
  validate(params);
  if (m == 0) throw DomainError("quadrature size must be positive");
  const double a = params.a, b = params.b;
  const int n = static_cast<int>(m);
  const double nn = static_cast<double>(m);

  const double log_const = std::lgamma(nn + a + 1.0) + std::lgamma(nn + b + 1.0) -
                           std::lgamma(nn + a + b + 1.0) - std::lgamma(nn + 1.0) +
                           (a + b + 1.0) * std::numbers::ln2;

  QuadratureRule rule;
  rule.params = params;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int k = 1; k <= n; ++k) {
    // Chebyshev-like initial guess shifted by the endpoint exponents.
    double x = std::cos(std::numbers::pi * (static_cast<double>(k) - 0.25 + 0.5 * a) /
                        (nn + 0.5 * (a + b + 1.0)));
    double dp = 0.0;
    double step = 1.0;
    int it = 0;
    for (; it < 100; ++it) {
      const double p = classical_pair(a, b, n, x).first;
      dp = 0.5 * (nn + a + b + 1.0) * classical_pair(a + 1.0, b + 1.0, n - 1, x).first;
      step = p / dp;
      x -= step;
      if (std::fabs(step) <= 1e-14 * std::max(1.0, std::fabs(x))) break;
    }
    if (it == 100 || !std::isfinite(x)) {
      throw ConvergenceError("Gauss-Jacobi node " + std::to_string(k) + " did not converge",
                             std::fabs(step));
    }
    dp = 0.5 * (nn + a + b + 1.0) * classical_pair(a + 1.0, b + 1.0, n - 1, x).first;
    rule.nodes[static_cast<std::size_t>(n - k)] = x;
    rule.weights[static_cast<std::size_t>(n - k)] = std::exp(log_const) / ((1.0 - x * x) * dp * dp);
  }
  for (std::size_t i = 0; i < m; ++i) {
    const bool interior = rule.nodes[i] > -1.0 && rule.nodes[i] < 1.0;
    const bool increasing = i == 0 || rule.nodes[i] > rule.nodes[i - 1];
    if (!interior || !increasing || !(rule.weights[i] > 0.0)) {
      throw ConvergenceError("Gauss-Jacobi iteration produced a degenerate rule at node " +
                                 std::to_string(i),
                             rule.nodes[i]);
    }
  }
  return rule;
}

std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(const JacobiParams& params,
                                                               std::size_t m) {
  using Key = std::tuple<double, double, std::size_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;
  const Key key{params.a, params.b, m};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(gauss_jacobi_rule(params, m));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

JacobiParams si_squared_weight(SiKind kind) {
  return kind == SiKind::kOneMinusUSquared ? JacobiParams{2.0, 2.0} : JacobiParams{2.0, 0.0};
}

double fourier_jacobi_coefficient(const RealFunction& f, int n, const JacobiParams& basis,
                                  SiKind si, std::size_t quadrature_size) {
  validate(basis);
  const auto rule = cached_gauss_jacobi_rule(si_squared_weight(si), quadrature_size);
  std::vector<double> v(rule->size());
  f.evaluate(rule->nodes, v);
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw EvaluationError("non-finite function value", rule->nodes[i]);
    acc += rule->weights[i] * v[i] * eval_jacobi(basis, n, rule->nodes[i]);
  }
  return acc;
}

}  // namespace gshift
