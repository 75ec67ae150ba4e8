#pragma once
// Best weighted polynomial approximation E_n(f) = inf ||(f - P) Si^alpha||_p
// over polynomials P of degree at most n - 1.

#include <cstddef>
#include <string>
#include <vector>

#include "gshift/chebyshev.hpp"
#include "gshift/function.hpp"
#include "gshift/weight.hpp"

namespace gshift {

struct ApproxResult {
  ChebSeries polynomial;  // degree <= n - 1
  double error = 0.0;     // weighted_norm(f - polynomial)
  int iterations = 0;
  bool converged = true;
  std::string method;  // "projection", "irls", "remez"
};

struct ApproxOptions {
  std::size_t grid_size = 2049;       // Chebyshev extrema for remez and irls
  std::size_t quadrature_size = 2048;  // Gauss-Jacobi points for the projection
  int max_iterations = 0;             // 0 picks 200 (remez) or 100 (irls)
  NormConfig error_norm{};            // how the reported error is measured
};

ApproxResult best_approx_l2(const RealFunction& f, int n, const WeightSpec& spec,
                            const ApproxOptions& options = {});

/// Discrete Remez exchange on grid_size Chebyshev extrema of [-1, 1]. Stops
/// when the levelled reference error and the grid maximum agree to 1e-8
/// relative; otherwise returns the best iterate with converged = false.
ApproxResult best_approx_minimax(const RealFunction& f, int n, const WeightSpec& spec,
                                 const ApproxOptions& options = {});

/// IRLS for 1 <= p < inf with Clenshaw-Curtis weights; p = 1 is handled by
/// clipping residuals at 1e-10 and is approximate.
ApproxResult best_approx_lp(const RealFunction& f, int n, double p, const WeightSpec& spec,
                            const ApproxOptions& options = {});

/// Dispatch on params.p. The weight exponent comes from params.alpha.
ApproxResult compute_E(const RealFunction& f, int n, const SpaceParams& params, SiKind si,
                       const ApproxOptions& options = {});

struct DyadicLevel {
  int k = 0;
  ChebSeries P;  // near-best of degree <= 2^k - 1
  ChebSeries Q;  // P_{2^k} - P_{2^{k-1}}, and P_1 for k = 0
  double E = 0.0;
  double Q_norm = 0.0;
  double triangle_bound = 0.0;  // E_{2^k} + E_{2^{k-1}}, with E_{1/2} = ||f|| for k = 0
};

struct DyadicDecomposition {
  std::vector<DyadicLevel> levels;
};

/// Levels k = 0..N with N <= 7.
DyadicDecomposition dyadic_polys(const RealFunction& f, int N, const SpaceParams& params, SiKind si,
                                 const ApproxOptions& options = {});

}  // namespace gshift
