#pragma once
// Generalized modulus of smoothness
//   omega_r(f, delta) = sup_{|t_j| <= delta} ||Delta^r_{t_1..t_r} f||
// approximated by lattice search with local refinement.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "gshift/shift.hpp"
#include "gshift/weight.hpp"

namespace gshift {

struct ModulusOptions {
  int grid_per_axis = 0;  // 0 picks 9 for r <= 2 and 5 for r = 3
  int refinements = 2;
  /// Golden-section steps per coordinate after the lattice passes (0 disables).
  int polish_iterations = 25;
  NormConfig norm{256, 4097, kShiftDomainClamp};
};

struct ModulusResult {
  double delta = 0.0;
  double value = 0.0;
  std::vector<double> steps;      // argmax, each in [0, delta]
  double level0_value = 0.0;      // best value before refinement
  double equal_step_value = 0.0;  // best value with t_1 = ... = t_r
  int levels = 0;                 // lattice and polish passes used
  std::size_t evaluations = 0;    // distinct difference norms computed
};

/// Reusable search state for one (f, params). Difference norms are cached by
/// the sorted |t_j|, since Delta depends only on cos t_j and is symmetric in
/// the steps. Not thread-safe.
class ModulusSearch {
 public:
  ModulusSearch(ShiftKernelConfig cfg, RealFunction f, SpaceParams params, ModulusOptions options = {});

  /// r in 1..3, delta in [0, pi). warm_start, when given, is evaluated as an
  /// extra candidate (it must lie in the cube).
  ModulusResult modulus(int r, double delta, std::span<const double> warm_start = {});

  double difference_norm(std::span<const double> steps);
  double f_norm() const { return f_norm_; }
  std::size_t evaluations() const { return norms_.size(); }

 private:
  SpaceParams params_;
  ModulusOptions options_;
  NormGrid grid_;
  DifferenceEvaluator eval_;
  double f_norm_ = 0.0;
  std::map<std::vector<double>, double> norms_;
};

ModulusResult modulus(const ShiftKernelConfig& cfg, const RealFunction& f, int r, double delta,
                      const SpaceParams& params, const ModulusOptions& options = {});

/// deltas strictly increasing in (0, pi). Each search is warm-started with
/// the previous argmax, so the values are nondecreasing.
std::vector<ModulusResult> modulus_curve(const ShiftKernelConfig& cfg, const RealFunction& f, int r,
                                         std::span<const double> deltas, const SpaceParams& params,
                                         const ModulusOptions& options = {});

}  // namespace gshift
