#pragma once
// Numerical checks of the Jackson, embedding and coincidence theorems, and
// the search for the Jacobi family that diagonalizes the shift.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gshift/best_approx.hpp"
#include "gshift/decay.hpp"
#include "gshift/jacobi.hpp"
#include "gshift/modulus.hpp"
#include "gshift/shift.hpp"

namespace gshift {

enum class Verdict { kPass, kFail, kLowConfidence, kSkipped };

std::string_view to_string(Verdict v);
/// 0 pass, 2 fail, 3 low confidence or skipped.
int exit_code(Verdict v);

struct ExperimentOptions {
  ShiftKernelConfig kernel{};
  ModulusOptions modulus{};
  ApproxOptions approx{};
  double tolerance = 0.15;              // slack on exponent comparisons in the embeddings
  double coincidence_tolerance = 0.2;   // pairwise slack in the coincidence verdict
  double min_r_squared = 0.9;           // below this a fit is low confidence
  double jackson_growth = 1.25;         // allowed upper-half / lower-half ratio
  double zero_threshold = 1e-10;        // values below this times ||f|| count as zero
  std::size_t jobs = 1;
};

/// Runs body(0..count-1) on up to `jobs` threads. If several calls throw,
/// the exception of the lowest index is rethrown.
void parallel_for(std::size_t jobs, std::size_t count, const std::function<void(std::size_t)>& body);

/// GSHIFT_JOBS if set to a positive integer, else the number of hardware threads.
std::size_t default_jobs();

struct JacksonCell {
  int n = 0;
  double E = 0.0;
  double omega = 0.0;
  double ratio = 0.0;
  std::string status;  // "ratio", "zero-E", "both-zero", "inconsistent"
};

struct JacksonReport {
  std::string function_id;
  SpaceParams params;
  int r = 1;
  std::vector<JacksonCell> cells;
  int split_n = 0;  // lower half n <= split_n, upper half n >= split_n
  double max_ratio = 0.0;
  double lower_max = 0.0;
  double upper_max = 0.0;
  int argmax_n = 0;
  double refined_ratio = 0.0;     // ratio at argmax_n with a finer modulus lattice and E grid
  double refinement_change = 0.0;  // relative change of that ratio
  bool inconsistent = false;
  bool all_zero = false;
  Verdict verdict = Verdict::kPass;
  std::string reason;
};

/// ns defaults to {4, 6, 8, 12, 16, 24, 32, 48, 64}. Throws DomainError when
/// (p, alpha) is outside the Jackson table.
JacksonReport verify_jackson(const RealFunction& f, const SpaceParams& params, int r,
                             const ExperimentOptions& options = {}, std::span<const int> ns = {});

/// Log-log fit of a sequence after dropping values at or below `floor`.
struct SequenceFit {
  std::vector<double> xs;
  std::vector<double> values;
  std::vector<bool> used;
  bool valid = false;  // at least 3 points above the floor
  DecayFit fit;
  std::string note;
};

SequenceFit fit_sequence(std::span<const double> xs, std::span<const double> values, double floor);

struct DyadicRow {
  int k = 0;
  double E = 0.0;
  double Q_norm = 0.0;
  double triangle_bound = 0.0;
};

struct EmbeddingReport {
  std::string kind;  // "direct" or "inverse"
  std::string function_id;
  SpaceParams params;
  int r = 1;
  std::optional<double> lambda_class;
  std::vector<int> ns;
  std::vector<double> E;
  std::vector<double> omega;  // at delta = 1/n
  SequenceFit fit_E;
  SequenceFit fit_omega;      // fitted against n, so its lambda_hat is the delta-exponent
  double lambda_E = 0.0;      // +inf when E falls below the noise floor too fast to fit
  double lambda_omega = 0.0;
  double tolerance = 0.0;
  bool holds = false;

  // direct
  std::vector<DyadicRow> dyadic;
  bool triangle_ok = true;
  SequenceFit fit_Q;
  double lambda_Q = 0.0;
  bool q_slope_consistent = false;  // |lambda_Q - lambda_E| <= 0.2 lambda_E

  // inverse: Jackson ratios E_n / omega(1/n) on the same data
  double jackson_lower_max = 0.0;
  double jackson_upper_max = 0.0;
  bool jackson_bounded = false;

  Verdict verdict = Verdict::kPass;
  std::string reason;
};

/// ns are powers of two 2..64 (dyadic levels k = 1..6). `lambda` is the class
/// exponent used for the admissibility check; the fitted lambda_E is used when
/// it is absent.
EmbeddingReport verify_direct_embedding(const RealFunction& f, int r, std::optional<double> lambda,
                                        const SpaceParams& params, const ExperimentOptions& options = {});
EmbeddingReport verify_inverse_embedding(const RealFunction& f, int r, const SpaceParams& params,
                                         const ExperimentOptions& options = {});

struct CoincidenceRow {
  int r = 1;
  SequenceFit fit_omega;
  double lambda_omega = 0.0;
  bool direct_holds = false;
  bool inverse_holds = false;
};

struct CoincidenceReport {
  std::string function_id;
  SpaceParams params;
  std::vector<int> r_values;
  std::vector<int> ns;
  std::vector<double> E;
  SequenceFit fit_E;
  double lambda_E = 0.0;
  std::vector<CoincidenceRow> rows;
  double max_gap = 0.0;  // largest pairwise difference of all exponents
  double tolerance = 0.0;
  Verdict verdict = Verdict::kPass;
  std::string reason;
};

CoincidenceReport coincidence_report(const RealFunction& f, std::span<const int> r_values,
                                     const SpaceParams& params, const ExperimentOptions& options = {});

struct BasisScore {
  JacobiParams params;
  double score = 0.0;
};

struct BasisReport {
  int max_degree = 0;
  std::vector<double> ys;
  std::vector<BasisScore> expansion_scores;   // max off-diagonal coefficient of tau_y P_n
  std::vector<BasisScore> multiplier_scores;  // max |eigenvalue - P_n(y)| for the winner
  JacobiParams expansion;
  double expansion_score = 0.0;
  double expansion_runner_up = 0.0;
  JacobiParams multiplier;
  double multiplier_score = 0.0;
  double multiplier_runner_up = 0.0;
};

/// a, b in {-0.5, 0, ..., 4} (step 0.5).
std::vector<JacobiParams> default_candidate_grid();

BasisReport discover_diagonalizing_basis(const ShiftKernelConfig& cfg, std::span<const JacobiParams> candidates,
                                         int max_degree, std::span<const double> ys);

}  // namespace gshift
