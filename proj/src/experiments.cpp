#include "gshift/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "gshift/error.hpp"

namespace gshift {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kLowConfidence: return "LOW_CONFIDENCE";
    case Verdict::kSkipped: return "SKIPPED";
  }
  return "?";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::kPass: return 0;
    case Verdict::kFail: return 2;
    default: return 3;
  }
}

void parallel_for(std::size_t jobs, std::size_t count, const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t width = std::clamp<std::size_t>(jobs, 1, count);
  std::vector<std::exception_ptr> errors(count);
  if (width == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < width; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::size_t default_jobs() {
  if (const char* env = std::getenv("GSHIFT_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

const std::vector<int> kJacksonNs = {4, 6, 8, 12, 16, 24, 32, 48, 64};
const std::vector<int> kDyadicNs = {2, 4, 8, 16, 32, 64};

WeightSpec spec_of(const ExperimentOptions& opt, const SpaceParams& params) {
  return WeightSpec{opt.kernel.si, params.alpha};
}

void require_admissible(const SpaceParams& params, Theorem th, int r, double lambda) {
  const auto adm = validate_parameters(params, th, r, lambda);
  if (!adm.admissible) throw DomainError(adm.reason);
}

// omega_r(f, 1/n) for every n, largest n (smallest delta) first internally.
std::vector<double> omega_at(ModulusSearch& search, int r, std::span<const int> ns) {
  std::vector<std::size_t> order(ns.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ns[a] > ns[b]; });
  std::vector<double> out(ns.size());
  std::vector<double> warm;
  for (std::size_t i : order) {
    const double delta = 1.0 / ns[i];
    const auto m = search.modulus(r, delta, warm);
    warm = m.steps;
    out[i] = m.value;
  }
  return out;
}

struct Sequences {
  std::vector<double> E;
  std::vector<std::vector<double>> omega;  // per r
  std::vector<ApproxResult> approx;
  double f_norm = 0.0;
};

// E_n for every n and omega_r(1/n) for every r, as independent jobs.
Sequences compute_sequences(const RealFunction& f, std::span<const int> ns, std::span<const int> rs,
                            const SpaceParams& params, const ExperimentOptions& opt) {
  Sequences s;
  s.approx.resize(ns.size());
  s.omega.resize(rs.size());
  s.f_norm = weighted_norm(f, params.p, spec_of(opt, params), opt.approx.error_norm);
  parallel_for(opt.jobs, ns.size() + rs.size(), [&](std::size_t i) {
    if (i < ns.size()) {
      s.approx[i] = compute_E(f, ns[i], params, opt.kernel.si, opt.approx);
    } else {
      ModulusSearch search(opt.kernel, f, params, opt.modulus);
      s.omega[i - ns.size()] = omega_at(search, rs[i - ns.size()], ns);
    }
  });
  for (const auto& a : s.approx) s.E.push_back(a.error);
  return s;
}

bool all_below(std::span<const double> v, double floor) {
  return std::all_of(v.begin(), v.end(), [floor](double x) { return x <= floor; });
}

std::vector<double> as_doubles(std::span<const int> v) { return std::vector<double>(v.begin(), v.end()); }

double fitted_lambda(const SequenceFit& fit) {
  return fit.valid ? fit.fit.lambda_hat : std::numeric_limits<double>::infinity();
}

bool low_confidence(const SequenceFit& fit, const ExperimentOptions& opt) {
  return fit.valid && fit.fit.r_squared < opt.min_r_squared;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

void jackson_halves(std::span<const int> ns, std::span<const double> E, std::span<const double> omega, double floor,
                    int split, double& lower, double& upper) {
  lower = upper = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double ratio = (E[i] <= floor || omega[i] <= floor) ? 0.0 : E[i] / omega[i];
    if (ns[i] <= split) lower = std::max(lower, ratio);
    if (ns[i] >= split) upper = std::max(upper, ratio);
  }
}

}  // namespace

JacksonReport verify_jackson(const RealFunction& f, const SpaceParams& params, int r, const ExperimentOptions& opt,
                             std::span<const int> ns_in) {
  require_admissible(params, Theorem::kJackson, r, 1.0);
  if (r < 1) throw DomainError("r must be >= 1");
  const std::vector<int> ns = ns_in.empty() ? kJacksonNs : std::vector<int>(ns_in.begin(), ns_in.end());
  if (ns.empty()) throw DomainError("n range is empty");
  std::vector<int> sorted = ns;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 1) throw DomainError("n values must be >= 1");

  JacksonReport rep;
  rep.function_id = f.id();
  rep.params = params;
  rep.r = r;
  rep.split_n = sorted[sorted.size() / 2];

  const std::vector<int> rs = {r};
  const Sequences seq = compute_sequences(f, ns, rs, params, opt);
  const double floor = opt.zero_threshold * std::max(seq.f_norm, std::numeric_limits<double>::min());

  bool any_nonzero_E = false;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    JacksonCell c;
    c.n = ns[i];
    c.E = seq.E[i];
    c.omega = seq.omega[0][i];
    const bool e_zero = c.E <= floor, w_zero = c.omega <= floor;
    if (!std::isfinite(c.E) || !std::isfinite(c.omega)) {
      c.status = "inconsistent";
      rep.inconsistent = true;
    } else if (e_zero && w_zero) {
      c.status = "both-zero";
    } else if (e_zero) {
      c.status = "zero-E";
    } else if (w_zero) {
      c.status = "inconsistent";
      rep.inconsistent = true;
    } else {
      c.status = "ratio";
      c.ratio = c.E / c.omega;
    }
    any_nonzero_E = any_nonzero_E || !e_zero;
    if (c.ratio > rep.max_ratio) {
      rep.max_ratio = c.ratio;
      rep.argmax_n = c.n;
    }
    if (c.n <= rep.split_n) rep.lower_max = std::max(rep.lower_max, c.ratio);
    if (c.n >= rep.split_n) rep.upper_max = std::max(rep.upper_max, c.ratio);
    rep.cells.push_back(c);
  }
  rep.all_zero = !any_nonzero_E;

  if (rep.argmax_n > 0) {
    ModulusOptions mo = opt.modulus;
    const int g = mo.grid_per_axis > 0 ? mo.grid_per_axis : (r <= 2 ? 9 : 5);
    mo.grid_per_axis = 2 * g - 1;
    ApproxOptions ao = opt.approx;
    ao.grid_size = 2 * ao.grid_size - 1;
    const double E = compute_E(f, rep.argmax_n, params, opt.kernel.si, ao).error;
    const double w = modulus(opt.kernel, f, r, 1.0 / rep.argmax_n, params, mo).value;
    rep.refined_ratio = w > 0.0 ? E / w : 0.0;
    rep.refinement_change = std::fabs(rep.refined_ratio - rep.max_ratio) / rep.max_ratio;
  }

  if (rep.inconsistent) {
    rep.verdict = Verdict::kFail;
    rep.reason = "zero modulus with nonzero E (kernel or solver failure)";
  } else if (rep.all_zero) {
    rep.verdict = Verdict::kPass;
    rep.reason = "E-sequence vanishes: f is a polynomial of degree < min n";
  } else if (rep.upper_max <= opt.jackson_growth * rep.lower_max) {
    rep.verdict = Verdict::kPass;
    rep.reason = "ratio bounded: upper-half max " + fmt(rep.upper_max) + " <= " + fmt(opt.jackson_growth) +
                 " x lower-half max " + fmt(rep.lower_max);
  } else {
    rep.verdict = Verdict::kFail;
    rep.reason = "ratio grows: upper-half max " + fmt(rep.upper_max) + " > " + fmt(opt.jackson_growth) +
                 " x lower-half max " + fmt(rep.lower_max);
  }
  return rep;
}

SequenceFit fit_sequence(std::span<const double> xs, std::span<const double> values, double floor) {
  SequenceFit out;
  out.xs.assign(xs.begin(), xs.end());
  out.values.assign(values.begin(), values.end());
  std::vector<double> fx, fy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const bool use = values[i] > floor && std::isfinite(values[i]);
    out.used.push_back(use);
    if (use) {
      fx.push_back(xs[i]);
      fy.push_back(values[i]);
    }
  }
  if (fx.size() < 3) {
    out.note = "fewer than 3 points above the noise floor";
    return out;
  }
  out.fit = estimate_decay(fx, fy);
  out.valid = true;
  return out;
}

namespace {

// Shared verdict logic of both embedding directions.
void embedding_verdict(EmbeddingReport& rep, const RealFunction& f, bool e_vanishes, double lambda_for_class,
                       Theorem th, const ExperimentOptions& opt) {
  if (f.polynomial_degree() || e_vanishes) {
    rep.verdict = Verdict::kPass;
    rep.reason = "vacuous: f is a polynomial and lies in every class";
    return;
  }
  const auto adm = validate_parameters(rep.params, th, rep.r, lambda_for_class);
  if (!adm.admissible) {
    rep.verdict = Verdict::kSkipped;
    rep.reason = "λ outside (0,2r): " + adm.reason;
    return;
  }
  if (!rep.fit_omega.valid || (th == Theorem::kDirect && !rep.fit_E.valid)) {
    rep.verdict = Verdict::kLowConfidence;
    rep.reason = "not enough points above the noise floor to fit";
    return;
  }
  if (low_confidence(rep.fit_E, opt) || low_confidence(rep.fit_omega, opt)) {
    rep.verdict = Verdict::kLowConfidence;
    rep.reason = "fit R^2 below " + fmt(opt.min_r_squared);
    return;
  }
  if (rep.holds && rep.triangle_ok) {
    rep.verdict = Verdict::kPass;
  } else {
    rep.verdict = Verdict::kFail;
  }
}

}  // namespace

EmbeddingReport verify_direct_embedding(const RealFunction& f, int r, std::optional<double> lambda,
                                        const SpaceParams& params, const ExperimentOptions& opt) {
  require_admissible(params, Theorem::kDirect, r, lambda.value_or(static_cast<double>(r)));
  if (lambda) require_admissible(params, Theorem::kDirect, r, *lambda);
  EmbeddingReport rep;
  rep.kind = "direct";
  rep.function_id = f.id();
  rep.params = params;
  rep.r = r;
  rep.lambda_class = lambda;
  rep.ns = kDyadicNs;
  rep.tolerance = opt.tolerance;

  // The dyadic levels k = 1..6 supply E_{2^k}; the modulus curve runs alongside.
  DyadicDecomposition dy;
  std::vector<double> omega;
  const std::vector<int> rs = {r};
  parallel_for(opt.jobs, 2, [&](std::size_t i) {
    if (i == 0) {
      dy = dyadic_polys(f, 6, params, opt.kernel.si, opt.approx);
    } else {
      ModulusSearch search(opt.kernel, f, params, opt.modulus);
      omega = omega_at(search, r, rep.ns);
    }
  });
  const double fnorm = weighted_norm(f, params.p, spec_of(opt, params), opt.approx.error_norm);
  const double floor = opt.zero_threshold * std::max(fnorm, std::numeric_limits<double>::min());
  std::vector<double> qx, qv;
  for (const auto& lvl : dy.levels) {
    rep.dyadic.push_back({lvl.k, lvl.E, lvl.Q_norm, lvl.triangle_bound});
    rep.triangle_ok = rep.triangle_ok && lvl.Q_norm <= lvl.triangle_bound + 1e-8;
    if (lvl.k >= 1) {
      rep.E.push_back(lvl.E);
      qx.push_back(std::ldexp(1.0, lvl.k));
      qv.push_back(lvl.Q_norm);
    }
  }
  rep.omega = omega;
  const auto xs = as_doubles(rep.ns);
  rep.fit_E = fit_sequence(xs, rep.E, floor);
  rep.fit_omega = fit_sequence(xs, rep.omega, floor);
  rep.fit_Q = fit_sequence(qx, qv, floor);
  rep.lambda_E = fitted_lambda(rep.fit_E);
  rep.lambda_omega = fitted_lambda(rep.fit_omega);
  rep.lambda_Q = fitted_lambda(rep.fit_Q);
  rep.q_slope_consistent = rep.fit_Q.valid && rep.fit_E.valid &&
                           std::fabs(rep.lambda_Q - rep.lambda_E) <= 0.2 * std::fabs(rep.lambda_E);
  rep.holds = rep.lambda_omega >= rep.lambda_E - rep.tolerance;

  embedding_verdict(rep, f, all_below(rep.E, floor), lambda.value_or(rep.lambda_E), Theorem::kDirect, opt);
  if (rep.reason.empty()) {
    rep.reason = "lambda_omega " + fmt(rep.lambda_omega) + (rep.holds ? " >= " : " < ") + "lambda_E " +
                 fmt(rep.lambda_E) + " - " + fmt(rep.tolerance);
    if (!rep.triangle_ok) rep.reason += "; dyadic triangle bound violated";
  }
  return rep;
}

EmbeddingReport verify_inverse_embedding(const RealFunction& f, int r, const SpaceParams& params,
                                         const ExperimentOptions& opt) {
  require_admissible(params, Theorem::kInverse, r, 1.0);
  EmbeddingReport rep;
  rep.kind = "inverse";
  rep.function_id = f.id();
  rep.params = params;
  rep.r = r;
  rep.ns = kDyadicNs;
  rep.tolerance = opt.tolerance;

  const std::vector<int> rs = {r};
  const Sequences seq = compute_sequences(f, rep.ns, rs, params, opt);
  const double floor = opt.zero_threshold * std::max(seq.f_norm, std::numeric_limits<double>::min());
  rep.E = seq.E;
  rep.omega = seq.omega[0];
  const auto xs = as_doubles(rep.ns);
  rep.fit_E = fit_sequence(xs, rep.E, floor);
  rep.fit_omega = fit_sequence(xs, rep.omega, floor);
  rep.lambda_E = fitted_lambda(rep.fit_E);
  rep.lambda_omega = fitted_lambda(rep.fit_omega);
  rep.holds = rep.lambda_E >= rep.lambda_omega - rep.tolerance;

  jackson_halves(rep.ns, rep.E, rep.omega, floor, 8, rep.jackson_lower_max, rep.jackson_upper_max);
  rep.jackson_bounded = rep.jackson_upper_max <= opt.jackson_growth * rep.jackson_lower_max ||
                        rep.jackson_upper_max == 0.0;

  embedding_verdict(rep, f, all_below(rep.E, floor), rep.lambda_omega, Theorem::kInverse, opt);
  if (rep.reason.empty()) {
    rep.reason = "lambda_E " + fmt(rep.lambda_E) + (rep.holds ? " >= " : " < ") + "lambda_omega " +
                 fmt(rep.lambda_omega) + " - " + fmt(rep.tolerance);
  }
  return rep;
}

CoincidenceReport coincidence_report(const RealFunction& f, std::span<const int> r_values, const SpaceParams& params,
                                     const ExperimentOptions& opt) {
  if (r_values.empty()) throw DomainError("r values are empty");
  const int r_min = *std::min_element(r_values.begin(), r_values.end());
  if (r_min < 1) throw DomainError("r values must be >= 1");
  require_admissible(params, Theorem::kCoincidence, r_min, std::min(1.0, static_cast<double>(r_min)));

  CoincidenceReport rep;
  rep.function_id = f.id();
  rep.params = params;
  rep.r_values.assign(r_values.begin(), r_values.end());
  rep.ns = kDyadicNs;
  rep.tolerance = opt.coincidence_tolerance;

  const Sequences seq = compute_sequences(f, rep.ns, rep.r_values, params, opt);
  const double floor = opt.zero_threshold * std::max(seq.f_norm, std::numeric_limits<double>::min());
  const auto xs = as_doubles(rep.ns);
  rep.E = seq.E;
  rep.fit_E = fit_sequence(xs, rep.E, floor);
  rep.lambda_E = fitted_lambda(rep.fit_E);

  std::vector<double> exps = {rep.lambda_E};
  bool low = low_confidence(rep.fit_E, opt);
  for (std::size_t i = 0; i < rep.r_values.size(); ++i) {
    CoincidenceRow row;
    row.r = rep.r_values[i];
    row.fit_omega = fit_sequence(xs, seq.omega[i], floor);
    row.lambda_omega = fitted_lambda(row.fit_omega);
    row.direct_holds = row.lambda_omega >= rep.lambda_E - opt.tolerance;
    row.inverse_holds = rep.lambda_E >= row.lambda_omega - opt.tolerance;
    low = low || low_confidence(row.fit_omega, opt) || !row.fit_omega.valid;
    exps.push_back(row.lambda_omega);
    rep.rows.push_back(row);
  }
  for (double a : exps) {
    for (double b : exps) {
      if (std::isfinite(a) && std::isfinite(b)) rep.max_gap = std::max(rep.max_gap, std::fabs(a - b));
    }
  }

  if (f.polynomial_degree() || all_below(rep.E, floor)) {
    rep.verdict = Verdict::kPass;
    rep.reason = "trivial coincidence: f is a polynomial and lies in every class";
  } else if (!(rep.lambda_E > 0.0 && rep.lambda_E < 2.0 * r_min)) {
    rep.verdict = Verdict::kSkipped;
    rep.reason = "λ outside (0,2r): fitted lambda_E " + fmt(rep.lambda_E) + " with min r " + std::to_string(r_min);
  } else if (low) {
    rep.verdict = Verdict::kLowConfidence;
    rep.reason = "fit R^2 below " + fmt(opt.min_r_squared) + " or too few points";
  } else if (rep.max_gap <= rep.tolerance) {
    rep.verdict = Verdict::kPass;
    rep.reason = "all exponents within " + fmt(rep.tolerance) + " (max gap " + fmt(rep.max_gap) + ")";
  } else {
    rep.verdict = Verdict::kFail;
    rep.reason = "exponents differ by " + fmt(rep.max_gap) + " > " + fmt(rep.tolerance);
  }
  return rep;
}

std::vector<JacobiParams> default_candidate_grid() {
  std::vector<JacobiParams> out;
  for (int i = -1; i <= 8; ++i) {
    for (int j = -1; j <= 8; ++j) out.push_back({0.5 * i, 0.5 * j});
  }
  return out;
}

BasisReport discover_diagonalizing_basis(const ShiftKernelConfig& cfg, std::span<const JacobiParams> candidates,
                                         int max_degree, std::span<const double> ys) {
  if (candidates.empty()) throw DomainError("candidate grid is empty");
  if (max_degree < 1) throw DomainError("max degree must be >= 1");
  if (ys.empty()) throw DomainError("y values are empty");
  for (double y : ys) {
    if (!(y > -1.0 && y <= 1.0)) throw DomainError("y values must lie in (-1, 1]");
  }
  BasisReport rep;
  rep.max_degree = max_degree;
  rep.ys.assign(ys.begin(), ys.end());

  // coef[n][y][m]: coefficient of P_m in tau_y P_n for one candidate.
  auto expand = [&](const JacobiParams& jp) {
    const auto rule = cached_gauss_jacobi_rule(jp, static_cast<std::size_t>(max_degree) + 8);
    std::vector<std::vector<std::vector<double>>> coef(static_cast<std::size_t>(max_degree) + 1);
    for (int n = 0; n <= max_degree; ++n) {
      const auto pn = RealFunction::from_scalar("P", [jp, n](double x) { return eval_jacobi(jp, n, x); }, n);
      for (double y : ys) {
        const auto v = apply_shift(cfg, pn, y, rule->nodes);
        std::vector<double> c(static_cast<std::size_t>(n) + 1);
        for (int m = 0; m <= n; ++m) {
          double acc = 0.0;
          for (std::size_t i = 0; i < rule->size(); ++i) acc += rule->weights[i] * v[i] * eval_jacobi(jp, m, rule->nodes[i]);
          c[static_cast<std::size_t>(m)] = acc / jacobi_norm_squared(jp, m);
        }
        coef[static_cast<std::size_t>(n)].push_back(std::move(c));
      }
    }
    return coef;
  };

  for (const auto& jp : candidates) {
    const auto coef = expand(jp);
    double score = 0.0;
    for (int n = 1; n <= max_degree; ++n) {
      for (const auto& c : coef[static_cast<std::size_t>(n)]) {
        for (int m = 0; m < n; ++m) score = std::max(score, std::fabs(c[static_cast<std::size_t>(m)]));
      }
    }
    rep.expansion_scores.push_back({jp, score});
  }
  auto pick = [](const std::vector<BasisScore>& scores, JacobiParams& best, double& best_score, double& runner) {
    std::size_t bi = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
      if (scores[i].score < scores[bi].score) bi = i;
    }
    best = scores[bi].params;
    best_score = scores[bi].score;
    runner = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (i != bi) runner = std::min(runner, scores[i].score);
    }
  };
  pick(rep.expansion_scores, rep.expansion, rep.expansion_score, rep.expansion_runner_up);

  // Eigenvalues of the winner against each candidate multiplier family.
  const auto coef = expand(rep.expansion);
  for (const auto& jp : candidates) {
    double score = 0.0;
    for (int n = 0; n <= max_degree; ++n) {
      for (std::size_t k = 0; k < ys.size(); ++k) {
        const double eig = coef[static_cast<std::size_t>(n)][k][static_cast<std::size_t>(n)];
        score = std::max(score, std::fabs(eig - eval_jacobi(jp, n, ys[k])));
      }
    }
    rep.multiplier_scores.push_back({jp, score});
  }
  pick(rep.multiplier_scores, rep.multiplier, rep.multiplier_score, rep.multiplier_runner_up);
  return rep;
}

}  // namespace gshift
