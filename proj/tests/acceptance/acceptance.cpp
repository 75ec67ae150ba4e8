// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "gshift/cli.hpp"
#include "gshift/corpus.hpp"
#include "gshift/error.hpp"
#include "gshift/experiments.hpp"
#include "gshift/report.hpp"

using namespace gshift;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string num(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.passed) ++failures;
  std::printf("criterion %2d %s  %s: %s [%.1f s]\n", id, o.passed ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

const SpaceParams kSup{kInf, 1.0};

// 1. Raw normalization for one Si reading, or enforced normalization.
Outcome kernel_normalization(const ShiftKernelConfig& base) {
  const auto grid = interior_grid(21);
  const auto rep = validate_kernel(base, grid, grid, KernelValidationOptions{});
  std::string detail;
  for (const auto& in : rep.interpretations) {
    for (const auto& p : in.properties) {
      if (p.property == "normalization") detail += std::string(to_string(in.si)) + " residual " + num(p.residual) + "; ";
    }
  }
  if (rep.any_passed) return {true, detail + "accepted " + std::string(to_string(rep.accepted))};
  ShiftKernelConfig enforced = base;
  enforced.enforce_normalization = true;
  double worst = 0.0;
  const auto one = RealFunction::constant(1.0);
  for (double y : grid) {
    for (double v : apply_shift(enforced, one, y, grid)) worst = std::max(worst, std::fabs(v - 1.0));
  }
  return {worst <= 1e-12, detail + "no reading passed; enforced residual " + num(worst)};
}

// 2. tau_1 f = f.
Outcome identity(const ShiftKernelConfig& cfg) {
  const auto xs = interior_grid(41, 0.99);
  double worst = 0.0;
  for (const auto& id : corpus_ids()) {
    const auto f = make_function(id);
    const auto v = apply_shift(cfg, f, 1.0, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::fabs(v[i] - f(xs[i])));
  }
  return {worst <= 1e-8, "max |tau_1 f - f| = " + num(worst) + " over " + std::to_string(corpus_ids().size()) +
                             " functions x 41 points"};
}

// 3. a_n(tau_y f) = a_n(f) M_n(y) with the discovered basis.
Outcome multiplier(const ShiftKernelConfig& cfg) {
  const auto grid = default_candidate_grid();
  const std::vector<double> ys = {-0.5, 0.0, 0.3, 0.7, 0.9};
  const std::vector<double> finer = {-0.8, -0.5, -0.2, 0.0, 0.15, 0.3, 0.5, 0.7, 0.8, 0.9};
  const auto coarse = discover_diagonalizing_basis(cfg, grid, 12, ys);
  const auto fine = discover_diagonalizing_basis(cfg, grid, 12, finer);
  const bool stable = coarse.expansion == fine.expansion && coarse.multiplier == fine.multiplier;

  const BasisPair basis{coarse.expansion, coarse.multiplier};
  // Random degree-12 polynomials through validate_kernel, plus exp(x) here.
  KernelValidationOptions opt;
  opt.basis = basis;
  const auto xs = interior_grid(11);
  const auto rep = validate_kernel(cfg, xs, ys, opt);
  double poly_res = kInf;
  for (const auto& in : rep.interpretations) {
    if (in.si != cfg.si) continue;
    for (const auto& p : in.properties) {
      if (p.property == "multiplier") poly_res = p.residual;
    }
  }
  const auto f = make_function("exp");
  double exp_res = 0.0;
  for (double y : ys) {
    const RealFunction tf("tau exp", [&cfg, &f, y](std::span<const double> x, std::span<double> out) {
      const auto v = apply_shift(cfg, f, y, x);
      std::copy(v.begin(), v.end(), out.begin());
    });
    for (int n = 0; n <= 12; ++n) {
      const double an = fourier_jacobi_coefficient(f, n, basis.expansion, cfg.si, 64);
      const double atn = fourier_jacobi_coefficient(tf, n, basis.expansion, cfg.si, 64);
      const double expect = an * eval_jacobi(basis.multiplier, n, y);
      exp_res = std::max(exp_res, std::fabs(atn - expect) / (1.0 + std::fabs(expect)));
    }
  }
  const bool ok = stable && poly_res <= 1e-6 && exp_res <= 1e-6;
  return {ok, "basis (" + num(basis.expansion.a) + "," + num(basis.expansion.b) + ") multipliers (" +
                  num(basis.multiplier.a) + "," + num(basis.multiplier.b) + "), winner separation " +
                  num(coarse.expansion_runner_up / std::max(coarse.expansion_score, 1e-300)) + "x, " +
                  (stable ? "stable" : "UNSTABLE") + " under y refinement; residual polys " + num(poly_res) +
                  ", exp " + num(exp_res)};
}

// 4. Recursive and inclusion-exclusion differences agree.
Outcome expansion(const ShiftKernelConfig& cfg) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> dt(-2.8, 2.8);
  std::uniform_real_distribution<double> dx(-0.95, 0.95);
  double worst = 0.0;
  for (int c = 0; c < 20; ++c) {
    const int r = 1 + c % 3;
    std::vector<double> coef(16);
    for (std::size_t k = 0; k < coef.size(); ++k) coef[k] = u(rng) / static_cast<double>(1 + k * k);
    const double s = u(rng);
    const ChebSeries series(coef);
    const auto f = RealFunction::from_scalar("smooth", [series, s](double x) { return series(x) + std::exp(s * x); });
    DifferenceQuery q;
    for (int j = 0; j < r; ++j) q.steps.push_back(dt(rng));
    const double x = dx(rng);
    worst = std::max(worst, std::fabs(generalized_difference(cfg, f, q, x) -
                                      difference_via_inclusion_exclusion(cfg, f, q, x)));
  }
  return {worst <= 1e-9, "max difference " + num(worst) + " over 20 random smooth cases, r = 1, 2, 3"};
}

// 5. Corollary 1 ratio over a t sweep, stable when the grid is doubled.
Outcome boundedness(const ShiftKernelConfig& cfg) {
  const NormConfig nc{256, 4097, kShiftDomainClamp};
  const NormGrid grid = make_norm_grid(kSup.p, WeightSpec{cfg.si, kSup.alpha}, nc);
  const double T = std::numbers::pi - 0.1;
  auto ts = [T](int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = -T + 2.0 * T * i / (n - 1);
    return v;
  };
  bool ok = true;
  double worst_change = 0.0, largest = 0.0;
  std::string worst_id;
  for (const auto& id : corpus_ids()) {
    const auto f = make_function(id);
    DifferenceEvaluator ev(cfg, f, grid.nodes);
    const double fnorm = norm_from_values(grid, ev.f_values());
    for (int r : {1, 2}) {
      double maxima[2] = {0.0, 0.0};
      for (int level = 0; level < 2; ++level) {
        const auto t = ts(level == 0 ? 33 : 65);
        for (std::size_t i = 0; i < t.size(); ++i) {
          for (std::size_t j = (r == 1 ? 0 : i); j < (r == 1 ? 1 : t.size()); ++j) {
            std::vector<double> steps = {t[i]};
            if (r == 2) steps.push_back(t[j]);
            double co = 1.0;
            for (double s : steps) co *= co_value(s);
            const double ratio = norm_from_values(grid, ev.difference(steps)) * co / fnorm;
            maxima[level] = std::max(maxima[level], ratio);
          }
        }
      }
      const double change = std::fabs(maxima[1] - maxima[0]);
      const bool finite = std::isfinite(maxima[0]) && std::isfinite(maxima[1]);
      // A vanishing difference (constants) has no meaningful relative change.
      const bool stable = change <= 0.1 * maxima[0] + 1e-10;
      ok = ok && finite && stable;
      largest = std::max(largest, maxima[1]);
      const double rel = maxima[0] > 1e-10 ? change / maxima[0] : 0.0;
      if (rel >= worst_change) {
        worst_change = rel;
        worst_id = id + " r=" + std::to_string(r);
      }
    }
  }
  return {ok, "largest max ratio " + num(largest) + ", worst relative change on doubling " + num(worst_change) +
                  " (" + worst_id + "), p=inf alpha=1"};
}

// 6. Gauss-Jacobi exactness against a 100-digit moment oracle.
Outcome quadrature() {
  using mp = boost::multiprecision::cpp_bin_float_100;
  auto beta = [](const mp& p, const mp& q) { return boost::multiprecision::tgamma(p) * boost::multiprecision::tgamma(q) / boost::multiprecision::tgamma(p + q); };
  // int_{-1}^{1} x^k (1-x)^a (1+x)^b dx with x = 2u - 1.
  auto moments = [&](int kmax, double a, double b) {
    std::vector<mp> out;
    const mp A(a), B(b);
    const mp scale = boost::multiprecision::pow(mp(2), A + B + 1);
    for (int k = 0; k <= kmax; ++k) {
      mp sum = 0, binom = 1;
      for (int j = 0; j <= k; ++j) {
        if (j > 0) binom = binom * (k - j + 1) / j;
        const mp term = binom * boost::multiprecision::pow(mp(2), j) * beta(j + B + 1, A + 1);
        sum += ((k - j) % 2 == 0) ? term : mp(-term);
      }
      out.push_back(scale * sum);
    }
    return out;
  };
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (const JacobiParams jp : {JacobiParams{0, 0}, JacobiParams{-0.5, -0.5}, JacobiParams{2, 0}, JacobiParams{2, 2}}) {
    for (int m : {4, 16, 64}) {
      const int deg = 2 * m - 1;
      const auto mom = moments(deg, jp.a, jp.b);
      const auto rule = gauss_jacobi_rule(jp, static_cast<std::size_t>(m));
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> c(static_cast<std::size_t>(deg) + 1);
        for (double& v : c) v = u(rng);
        mp exact = 0;
        for (int k = 0; k <= deg; ++k) exact += mp(c[static_cast<std::size_t>(k)]) * mom[static_cast<std::size_t>(k)];
        double q = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
          double p = 0.0;
          for (int k = deg; k >= 0; --k) p = p * rule.nodes[i] + c[static_cast<std::size_t>(k)];
          q += rule.weights[i] * p;
        }
        const double e = static_cast<double>(exact);
        worst = std::max(worst, std::fabs(q - e) / std::fabs(e));
      }
    }
  }
  return {worst <= 1e-12, "worst relative error " + num(worst) + " over m in {4,16,64}, 4 weights, 3 polynomials each"};
}

// 7. E_2(x^2) = 1/2 in the sup norm, and polynomials are reproduced.
Outcome minimax() {
  const auto sq = make_function("poly:2");
  const double e2 = compute_E(sq, 2, {kInf, 0.0}, SiKind::kOneMinusUSquared).error;
  // Dense zoom over lines c0 + c1 x.
  double best = kInf, c0 = 0.0, c1 = 0.0, h = 1.0;
  std::vector<double> xs(2001);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = -1.0 + 2.0 * static_cast<double>(i) / 2000.0;
  for (int level = 0; level < 8; ++level) {
    double bc0 = c0, bc1 = c1;
    for (int i = -20; i <= 20; ++i) {
      for (int j = -20; j <= 20; ++j) {
        const double a = c0 + h * i / 20.0, b = c1 + h * j / 20.0;
        double err = 0.0;
        for (double x : xs) err = std::max(err, std::fabs(x * x - a - b * x));
        if (err < best) {
          best = err;
          bc0 = a;
          bc1 = b;
        }
      }
    }
    c0 = bc0;
    c1 = bc1;
    h /= 8.0;
  }
  double worst_zero = 0.0;
  for (int d = 0; d <= 8; ++d) {
    const auto f = make_function("poly:" + std::to_string(d));
    for (double p : {1.5, 2.0, 4.0, kInf}) {
      for (double alpha : {0.0, 1.0}) {
        worst_zero = std::max(worst_zero, compute_E(f, d + 1, {p, alpha}, SiKind::kOneMinusUSquared).error);
      }
    }
  }
  const bool ok = std::fabs(e2 - 0.5) <= 1e-6 && std::fabs(best - 0.5) <= 1e-6 && worst_zero <= 1e-10;
  return {ok, "E_2(x^2) = " + format_double(e2) + ", grid search " + num(best, 10) +
                  ", max E_n(poly deg < n) = " + num(worst_zero)};
}

// 8. Jackson ratios bounded over the corpus.
Outcome jackson(const ExperimentOptions& opt) {
  bool ok = true;
  int vacuous = 0, checked = 0;
  double worst_growth = 0.0;
  std::string worst_id, failed;
  for (const auto& id : corpus_ids()) {
    const auto f = make_function(id);
    for (int r : {1, 2}) {
      const auto rep = verify_jackson(f, kSup, r, opt);
      if (rep.all_zero) {
        ++vacuous;
        continue;
      }
      ++checked;
      const bool good = rep.verdict == Verdict::kPass && std::isfinite(rep.max_ratio);
      if (!good) failed += " " + id + "/r" + std::to_string(r);
      ok = ok && good;
      const double growth = rep.upper_max / rep.lower_max;
      if (growth >= worst_growth) {
        worst_growth = growth;
        worst_id = id + " r=" + std::to_string(r);
      }
    }
  }
  return {ok, std::to_string(checked) + " (f, r) pairs checked, " + std::to_string(vacuous) +
                  " vacuous; worst upper/lower " + num(worst_growth) + " (" + worst_id + ")" +
                  (failed.empty() ? "" : "; failed:" + failed)};
}

// 9. Coincidence of exponents for |x - 1/4|.
Outcome coincidence(const ExperimentOptions& opt) {
  const std::vector<int> rs = {1, 2};
  const auto rep = coincidence_report(make_function("absshift:0.25"), rs, kSup, opt);
  std::vector<double> lam = {rep.lambda_E};
  std::vector<double> r2 = {rep.fit_E.fit.r_squared};
  bool fits = rep.fit_E.valid;
  for (const auto& row : rep.rows) {
    lam.push_back(row.lambda_omega);
    r2.push_back(row.fit_omega.fit.r_squared);
    fits = fits && row.fit_omega.valid;
  }
  double gap = 0.0;
  bool in_band = true;
  for (double a : lam) {
    in_band = in_band && a >= 0.8 && a <= 1.2;
    for (double b : lam) gap = std::max(gap, std::fabs(a - b));
  }
  const bool r2_ok = std::all_of(r2.begin(), r2.end(), [](double v) { return v >= 0.9; });
  const bool ok = fits && gap <= 0.2 && in_band && r2_ok;
  return {ok, "lambda_E " + num(lam[0]) + ", lambda_omega(r=1) " + num(lam[1]) + ", lambda_omega(r=2) " +
                  num(lam[2]) + "; gap " + num(gap) + "; min R^2 " + num(*std::min_element(r2.begin(), r2.end()))};
}

// 10. Dyadic triangle bound and Q_k decay.
Outcome dyadic(const ShiftKernelConfig& cfg) {
  bool ok = true;
  double worst_excess = -kInf;
  std::string slopes;
  for (const auto& e : corpus()) {
    const auto f = make_function(e.id);
    const auto dy = dyadic_polys(f, 6, kSup, cfg.si);
    std::vector<double> xs, E, Q;
    for (const auto& lvl : dy.levels) {
      const double excess = lvl.Q_norm - lvl.triangle_bound;
      worst_excess = std::max(worst_excess, excess);
      ok = ok && excess <= 1e-8;
      if (lvl.k >= 1) {
        xs.push_back(std::ldexp(1.0, lvl.k));
        E.push_back(lvl.E);
        Q.push_back(lvl.Q_norm);
      }
    }
    if (!e.nominal_lambda) continue;
    const double lq = estimate_decay(xs, Q).lambda_hat;
    const double le = estimate_decay(xs, E).lambda_hat;
    const bool close = std::fabs(lq - le) <= 0.2 * le;
    ok = ok && close;
    slopes += " " + e.id + " " + num(lq) + "/" + num(le) + (close ? "" : "(off)");
  }
  return {ok, "max ||Q_k|| - bound " + num(worst_excess) + "; slope Q/E:" + slopes};
}

// 11. Modulus properties and determinism.
Outcome modulus_properties(const ShiftKernelConfig& cfg) {
  bool zero = true;
  for (const auto& id : corpus_ids()) {
    for (int r = 1; r <= 3; ++r) zero = zero && modulus(cfg, make_function(id), r, 0.0, kSup).value == 0.0;
  }
  const std::vector<double> deltas = {1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2};
  double worst_drop = 0.0;
  for (const char* id : {"absshift:0.25", "pwcubic", "exp"}) {
    for (int r : {1, 2}) {
      const auto curve = modulus_curve(cfg, make_function(id), r, deltas, kSup);
      for (std::size_t i = 1; i < curve.size(); ++i) worst_drop = std::max(worst_drop, curve[i - 1].value - curve[i].value);
    }
  }
  double worst_eigen = 0.0;
  for (int nu : {2, 5, 8}) {
    for (double p : {2.0, kInf}) {
      ModulusSearch search(cfg, make_function("eigen:" + std::to_string(nu)), {p, 1.0});
      for (double delta : {0.05, 0.2, 0.5}) {
        double scan = 0.0;
        for (int i = 0; i <= 20000; ++i) {
          scan = std::max(scan, std::fabs(eval_jacobi({0, 4}, nu, std::cos(delta * i / 20000.0)) - 1.0));
        }
        const double oracle = search.f_norm() * scan;
        worst_eigen = std::max(worst_eigen, std::fabs(search.modulus(1, delta).value - oracle) / std::max(1.0, oracle));
      }
    }
  }
  const std::vector<std::string> args = {"modulus", "--f", "pwcubic", "--r", "1,2", "--delta", "0.05,0.2"};
  std::ostringstream a, b, err;
  const int ca = run_command(args, a, err), cb = run_command(args, b, err);
  const bool identical = ca == 0 && cb == 0 && a.str() == b.str() && !a.str().empty();
  const bool ok = zero && worst_drop <= 1e-9 && worst_eigen <= 1e-6 && identical;
  return {ok, std::string("omega(f,0) = 0 ") + (zero ? "everywhere" : "VIOLATED") + "; worst decrease " +
                  num(worst_drop) + "; eigen-reduction error " + num(worst_eigen) + "; reports " +
                  (identical ? "byte-identical" : "DIFFER")};
}

}  // namespace

int main() {
  KernelValidationReport kv;
  const ShiftKernelConfig cfg = resolve_kernel_config(ShiftKernelConfig{}, &kv);
  std::printf("gshift %s acceptance; kernel si=%s enforce_normalization=%s\n", std::string(version_string()).c_str(),
              std::string(to_string(cfg.si)).c_str(), cfg.enforce_normalization ? "on" : "off");
  ExperimentOptions opt;
  opt.kernel = cfg;
  opt.jobs = default_jobs();

  criterion(1, "kernel normalization", [&] { return kernel_normalization(ShiftKernelConfig{}); });
  criterion(2, "identity at t=0", [&] { return identity(cfg); });
  criterion(3, "multiplier property", [&] { return multiplier(cfg); });
  criterion(4, "expansion equivalence", [&] { return expansion(cfg); });
  criterion(5, "boundedness", [&] { return boundedness(cfg); });
  criterion(6, "quadrature exactness", [&] { return quadrature(); });
  criterion(7, "minimax sanity", [&] { return minimax(); });
  criterion(8, "Jackson boundedness", [&] { return jackson(opt); });
  criterion(9, "coincidence", [&] { return coincidence(opt); });
  criterion(10, "dyadic machinery", [&] { return dyadic(cfg); });
  criterion(11, "modulus properties", [&] { return modulus_properties(cfg); });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
