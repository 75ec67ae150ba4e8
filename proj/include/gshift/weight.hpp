#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>

#include "gshift/function.hpp"

namespace gshift {

/// Two readings of the weight factor Si(u); both vanish at u = 1.
enum class SiKind { kOneMinusU, kOneMinusUSquared };

std::string_view to_string(SiKind kind);
SiKind si_kind_from_string(std::string_view name);

struct WeightSpec {
  SiKind si = SiKind::kOneMinusUSquared;
  double alpha = 0.0;  // exponent of Si in the norm, >= 0
};

struct SpaceParams {
  double p = 2.0;  // in [1, inf]
  double alpha = 0.0;

  bool is_sup() const { return p == std::numeric_limits<double>::infinity(); }
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Discretization of the weighted norm.
struct NormConfig {
  std::size_t quadrature_size = 256;  // Gauss-Legendre points for p < inf
  std::size_t sup_grid_size = 4097;   // Chebyshev-spaced points for p = inf
  /// Evaluation domain is [-1 + clamp, 1 - clamp]. Norms of shifted functions
  /// use kShiftDomainClamp because the shift prefactor is singular at +-1.
  double clamp = 0.0;
};

inline constexpr double kShiftDomainClamp = 1e-4;

/// Si(u). Throws DomainError for u outside [-1, 1].
double weight_value(SiKind kind, double u);
inline double weight_value(const WeightSpec& spec, double u) { return weight_value(spec.si, u); }

/// Co(t) = cos^4(t/2) = (1 + cos t)^2 / 4.
double co_value(double t);

/// ||f Si^alpha||_p on the configured domain. The Si interpretation and alpha
/// come from `spec`; `p` from params (params.alpha is ignored here so that the
/// norm can be taken with any alpha >= 0).
double weighted_norm(const RealFunction& f, double p, const WeightSpec& spec,
                     const NormConfig& cfg = {});
double weighted_norm(const RealFunction& f, const SpaceParams& params, SiKind si,
                     const NormConfig& cfg = {});

/// Sample points and weights that define the discrete norm; values of the
/// integrand are expected at `nodes`. For p = inf `weights` holds Si^alpha
/// only; for p < inf it holds quadrature weight times Si^(alpha p).
struct NormGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double p = 2.0;
};

NormGrid make_norm_grid(double p, const WeightSpec& spec, const NormConfig& cfg);
/// Applies the grid to already computed integrand values.
double norm_from_values(const NormGrid& grid, std::span<const double> values);

enum class Theorem { kJackson, kDirect, kInverse, kCoincidence };

std::string_view to_string(Theorem theorem);

struct Admissibility {
  bool admissible = false;
  std::string reason;
};

/// Checks (p, alpha, r, lambda) against the hypothesis table of a theorem.
/// r and lambda are ignored for kJackson.
Admissibility validate_parameters(const SpaceParams& params, Theorem theorem, int r = 1,
                                  double lambda = 1.0);

}  // namespace gshift
