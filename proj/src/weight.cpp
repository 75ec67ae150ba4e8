#include "gshift/weight.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "gshift/chebyshev.hpp"
#include "gshift/error.hpp"
#include "gshift/jacobi.hpp"
#include "gshift/simd.hpp"

namespace gshift {

std::string_view to_string(SiKind kind) {
  return kind == SiKind::kOneMinusU ? "one-minus-u" : "one-minus-u-squared";
}

SiKind si_kind_from_string(std::string_view name) {
  if (name == "one-minus-u" || name == "1-u") return SiKind::kOneMinusU;
  if (name == "one-minus-u-squared" || name == "1-u^2") return SiKind::kOneMinusUSquared;
  throw DomainError("unknown Si interpretation '" + std::string(name) + "'");
}

double weight_value(SiKind kind, double u) {
  if (!(u >= -1.0 && u <= 1.0)) {
    throw DomainError("Si argument " + std::to_string(u) + " outside [-1, 1]");
  }
  return kind == SiKind::kOneMinusU ? 1.0 - u : 1.0 - u * u;
}

double co_value(double t) {
  const double c = 1.0 + std::cos(t);
  return 0.25 * c * c;
}

NormGrid make_norm_grid(double p, const WeightSpec& spec, const NormConfig& cfg) {
  if (!(p >= 1.0)) throw DomainError("norm exponent p must be >= 1");
  if (cfg.quadrature_size < 2 || cfg.sup_grid_size < 2) {
    throw DomainError("norm grid sizes must be at least 2");
  }
  if (!(cfg.clamp >= 0.0 && cfg.clamp < 1.0)) throw DomainError("domain clamp must be in [0, 1)");
  const double lo = -1.0 + cfg.clamp;
  const double hi = 1.0 - cfg.clamp;

  NormGrid grid;
  grid.p = p;
  if (p == kInf) {
    grid.nodes = chebyshev_extrema(cfg.sup_grid_size, lo, hi);
    grid.weights.resize(grid.nodes.size());
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
      grid.weights[i] = std::pow(weight_value(spec.si, grid.nodes[i]), spec.alpha);
    }
    return grid;
  }
  const auto rule = cached_gauss_jacobi_rule({0.0, 0.0}, cfg.quadrature_size);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  grid.nodes.resize(rule->size());
  grid.weights.resize(rule->size());
  for (std::size_t i = 0; i < rule->size(); ++i) {
    const double x = mid + half * rule->nodes[i];
    grid.nodes[i] = x;
    grid.weights[i] = half * rule->weights[i] * std::pow(weight_value(spec.si, x), spec.alpha * p);
  }
  return grid;
}

double norm_from_values(const NormGrid& grid, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw EvaluationError("non-finite integrand", grid.nodes[i]);
  }
  if (grid.p == kInf) return simd::weighted_abs_max(values, grid.weights);
  double acc = 0.0;
  if (grid.p == 2.0) {
    for (std::size_t i = 0; i < values.size(); ++i) acc += grid.weights[i] * values[i] * values[i];
    return std::sqrt(acc);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += grid.weights[i] * std::pow(std::fabs(values[i]), grid.p);
  }
  return std::pow(acc, 1.0 / grid.p);
}

double weighted_norm(const RealFunction& f, double p, const WeightSpec& spec,
                     const NormConfig& cfg) {
  const NormGrid grid = make_norm_grid(p, spec, cfg);
  std::vector<double> v(grid.nodes.size());
  f.evaluate(grid.nodes, v);
  return norm_from_values(grid, v);
}

double weighted_norm(const RealFunction& f, const SpaceParams& params, SiKind si,
                     const NormConfig& cfg) {
  return weighted_norm(f, params.p, WeightSpec{si, params.alpha}, cfg);
}

std::string_view to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::kJackson:
      return "jackson";
    case Theorem::kDirect:
      return "direct";
    case Theorem::kInverse:
      return "inverse";
    case Theorem::kCoincidence:
      return "coincidence";
  }
  return "unknown";
}

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

Admissibility alpha_range(double p, double alpha, bool jackson_p1) {
  if (!(p >= 1.0)) return {false, "p = " + fmt(p) + " is below 1"};
  if (p == kInf) {
    if (alpha >= 1.0 && alpha < 1.5) return {true, "1 <= alpha < 3/2 for p = inf"};
    return {false, "p = inf requires 1 <= alpha < 3/2, got alpha = " + fmt(alpha)};
  }
  if (p == 1.0 && jackson_p1) {
    if (alpha > 0.5 && alpha <= 1.0) return {true, "1/2 < alpha <= 1 for p = 1"};
    return {false, "p = 1 requires 1/2 < alpha <= 1, got alpha = " + fmt(alpha)};
  }
  const double lo = 1.0 - 1.0 / (2.0 * p);
  const double hi = 1.5 - 1.0 / (2.0 * p);
  if (alpha > lo && alpha < hi) {
    return {true, fmt(lo) + " < alpha < " + fmt(hi)};
  }
  return {false, "requires " + fmt(lo) + " < alpha < " + fmt(hi) + ", got alpha = " + fmt(alpha)};
}

}  // namespace

Admissibility validate_parameters(const SpaceParams& params, Theorem theorem, int r,
                                  double lambda) {
  Admissibility range = alpha_range(params.p, params.alpha, theorem == Theorem::kJackson);
  if (!range.admissible || theorem == Theorem::kJackson) return range;
  if (r < 1) return {false, "r must be a positive integer"};
  if (theorem == Theorem::kInverse) {
    if (lambda > 0.0) return {true, range.reason + "; lambda > 0"};
    return {false, "requires lambda > 0, got " + fmt(lambda)};
  }
  if (lambda > 0.0 && lambda < 2.0 * r) {
    return {true, range.reason + "; 0 < lambda < 2r"};
  }
  return {false, "requires 0 < lambda < 2r = " + fmt(2.0 * r) + ", got lambda = " + fmt(lambda)};
}

}  // namespace gshift
