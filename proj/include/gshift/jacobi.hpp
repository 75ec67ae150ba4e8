#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "gshift/function.hpp"
#include "gshift/weight.hpp"

namespace gshift {

/// Index pair of the Jacobi family orthogonal with (1-x)^a (1+x)^b.
struct JacobiParams {
  double a = 0.0;
  double b = 0.0;

  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;
};

/// Throws DomainError unless a > -1 and b > -1.
void validate(const JacobiParams& params);

/// P_n^{(a,b)}(x) / P_n^{(a,b)}(1); exactly 1 at x = 1.
double eval_jacobi(const JacobiParams& params, int n, double x);

/// Classical (unnormalized) P_n^{(a,b)}(x) by the three-term recurrence.
double eval_jacobi_classical(const JacobiParams& params, int n, double x);

/// P_n^{(a,b)}(1) = (a+1)_n / n!.
double jacobi_value_at_one(const JacobiParams& params, int n);

/// Integral of the squared normalized polynomial against the weight.
double jacobi_norm_squared(const JacobiParams& params, int n);

/// Integral of (1-x)^a (1+x)^b over [-1, 1] = 2^{a+b+1} B(a+1, b+1).
double jacobi_weight_integral(const JacobiParams& params);

struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, interior to (-1, 1)
  std::vector<double> weights;  // positive
  JacobiParams params;

  std::size_t size() const { return nodes.size(); }
  /// Sum of weights times f at the nodes.
  double integrate(const RealFunction& f) const;
};

/// m-point Gauss-Jacobi rule, exact through degree 2m-1 against the weight.
/// Nodes by Newton iteration (tolerance 1e-14, at most 100 steps); throws
/// ConvergenceError carrying the residual when a root does not settle.
QuadratureRule gauss_jacobi_rule(const JacobiParams& params, std::size_t m);

/// Memoized gauss_jacobi_rule; safe to call from several threads.
std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(const JacobiParams& params,
                                                               std::size_t m);

/// Jacobi weight whose density is Si(x)^2 for the given interpretation:
/// (2, 2) for 1 - u^2 and (2, 0) for 1 - u.
JacobiParams si_squared_weight(SiKind kind);

/// a_n(f) = integral of f P_n Si^2 over [-1, 1] with P_n from `basis`, by a
/// Gauss rule for the Si^2 weight. Throws EvaluationError if f is not finite
/// at a node.
double fourier_jacobi_coefficient(const RealFunction& f, int n, const JacobiParams& basis,
                                  SiKind si, std::size_t quadrature_size = 256);

}  // namespace gshift
