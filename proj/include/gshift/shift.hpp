#pragma once
// Generalized shift operator tau_y(f, x) on [-1, 1], its powers and the
// generalized differences built from it.
//
//   tau_y(f, x) = 4 / (pi Si(x) (1+y)^2) * int_{-1}^{1} B_y(x, z, R) f(R) dz / sqrt(1 - z^2)
//   R           = x y - sqrt(1-x^2) sqrt(1-y^2) z
//   B_y(x,z,R)  = 2 (sqrt(1-x^2) y + x z sqrt(1-y^2) + sqrt(1-x^2)(1-y) Si(z))^2 - Si(R)
//
// The z-integral is a Chebyshev-Gauss sum. Differences of order r > 1 need
// the inner function on the whole interval; it is materialized as a
// Chebyshev interpolant of degree interp_degree.

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gshift/chebyshev.hpp"
#include "gshift/function.hpp"
#include "gshift/jacobi.hpp"
#include "gshift/weight.hpp"

namespace gshift {

struct ShiftKernelConfig {
  SiKind si = SiKind::kOneMinusUSquared;
  std::size_t quadrature_size = 256;
  /// Divide by the raw tau_y(1, x) so that constants are reproduced exactly.
  bool enforce_normalization = false;
  std::size_t interp_degree = 128;
};

/// Throws DomainError unless quadrature_size >= 8 and interp_degree >= 1.
void validate(const ShiftKernelConfig& cfg);

/// Expansion basis for Fourier-Jacobi coefficients and the Jacobi family
/// that supplies the multipliers tau_y P_n = P_n(x) * M_n(y).
struct BasisPair {
  JacobiParams expansion{2.0, 2.0};
  JacobiParams multiplier{0.0, 4.0};
};

struct KernelValue {
  double R = 0.0;
  double B = 0.0;
};

/// R and B at (y, x, z). Throws SingularArgumentError when |x| >= 1 or y <= -1.
KernelValue kernel_B(const ShiftKernelConfig& cfg, double y, double x, double z);

double apply_shift(const ShiftKernelConfig& cfg, const RealFunction& f, double y, double x);
std::vector<double> apply_shift(const ShiftKernelConfig& cfg, const RealFunction& f, double y,
                                std::span<const double> xs);

/// Interpolant of degree `degree` of u -> tau_y(f, u). When f is a polynomial
/// of known degree the quadrature is enlarged until the z-integral is exact.
ChebSeries materialize_shift(const ShiftKernelConfig& cfg, const RealFunction& f, double y,
                             std::size_t degree);

/// tau_{y_r}( ... tau_{y_1}(f) ... )(x).
double shift_power(const ShiftKernelConfig& cfg, const RealFunction& f, std::span<const double> ys,
                   double x);
std::vector<double> shift_power(const ShiftKernelConfig& cfg, const RealFunction& f,
                                std::span<const double> ys, std::span<const double> xs);

/// Step vector (t_1, ..., t_r) of a generalized difference.
struct DifferenceQuery {
  std::vector<double> steps;
  int order() const { return static_cast<int>(steps.size()); }
};

/// Recursive definition: Delta_{t_1} f = tau_{cos t_1} f - f, and the r-th
/// difference is the t_r-difference of the (r-1)-th.
double generalized_difference(const ShiftKernelConfig& cfg, const RealFunction& f,
                              const DifferenceQuery& q, double x);
std::vector<double> generalized_difference(const ShiftKernelConfig& cfg, const RealFunction& f,
                                           const DifferenceQuery& q, std::span<const double> xs);

/// Signed sum over nonempty index subsets S of powers tau^S f, plus (-1)^r f:
///   Delta = sum_S (-1)^{r-|S|} tau^S f + (-1)^r f.
double difference_via_inclusion_exclusion(const ShiftKernelConfig& cfg, const RealFunction& f,
                                          const DifferenceQuery& q, double x);
std::vector<double> difference_via_inclusion_exclusion(const ShiftKernelConfig& cfg,
                                                       const RealFunction& f,
                                                       const DifferenceQuery& q,
                                                       std::span<const double> xs);

/// Evaluates many differences of one function on one fixed grid.
///
/// Uses the inclusion-exclusion form, so only shifted copies of f are ever
/// interpolated (never f itself, which may have kinks). Shifted values and
/// materialized powers are cached by their (sorted) shift parameters, which
/// makes repeated and permuted step vectors cheap. Not thread-safe.
class DifferenceEvaluator {
 public:
  DifferenceEvaluator(ShiftKernelConfig cfg, RealFunction f, std::vector<double> xs);

  std::span<const double> nodes() const { return xs_; }
  std::span<const double> f_values() const { return fx_; }
  std::vector<double> difference(std::span<const double> steps);
  std::size_t cache_size() const { return values_.size() + series_.size(); }

 private:
  const std::vector<double>& power_values(const std::vector<double>& ys);
  const ChebSeries& power_series(const std::vector<double>& ys);

  ShiftKernelConfig cfg_;
  RealFunction f_;
  std::vector<double> xs_;
  std::vector<double> fx_;
  std::map<std::vector<double>, std::vector<double>> values_;
  std::map<std::vector<double>, ChebSeries> series_;
};

/// ||tau_{cos t} f|| * Co(t) / ||f|| on the clamped domain. Throws
/// DegenerateInputError when ||f|| = 0.
double boundedness_ratio(const ShiftKernelConfig& cfg, const RealFunction& f, double t,
                         const SpaceParams& params, const NormConfig& norm = {256, 4097, kShiftDomainClamp});

/// ||Delta^r f|| * prod Co(t_j) / ||f||, the quantity bounded by the
/// difference estimate for products of shifts.
double difference_ratio(const ShiftKernelConfig& cfg, const RealFunction& f,
                        std::span<const double> steps, const SpaceParams& params,
                        const NormConfig& norm = {256, 4097, kShiftDomainClamp});

struct PropertyResidual {
  std::string property;  // "linearity", "identity", "eigenfunction", "normalization", "multiplier"
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct InterpretationReport {
  SiKind si = SiKind::kOneMinusUSquared;
  std::vector<PropertyResidual> properties;
  bool normalization_passed = false;  // max |tau_y(1,x) - 1| <= 1e-6
};

struct KernelValidationReport {
  std::vector<InterpretationReport> interpretations;
  std::size_t x_grid_size = 0;
  std::size_t y_grid_size = 0;
  std::size_t quadrature_size = 0;
  int max_degree = 0;
  BasisPair basis;
  /// Interpretation with the smallest passing normalization residual, if any.
  bool any_passed = false;
  SiKind accepted = SiKind::kOneMinusUSquared;
};

struct KernelValidationOptions {
  int max_degree = 12;
  BasisPair basis{};
  std::vector<RealFunction> test_functions;  // for the identity property
  unsigned seed = 1;
};

/// Residuals of the operator properties on an (x, y) grid, for both Si
/// interpretations; normalization is measured raw (enforcement off).
KernelValidationReport validate_kernel(const ShiftKernelConfig& cfg, std::span<const double> x_grid,
                                       std::span<const double> y_grid,
                                       const KernelValidationOptions& options);

/// Uniform interior grid of n points in [-0.95, 0.95].
std::vector<double> interior_grid(std::size_t n, double bound = 0.95);

/// Runs validate_kernel on a 21 x 21 grid and returns a configuration that
/// uses the accepted interpretation, or the squared one with normalization
/// enforced when neither passes.
ShiftKernelConfig resolve_kernel_config(ShiftKernelConfig base,
                                        KernelValidationReport* report = nullptr);

}  // namespace gshift
