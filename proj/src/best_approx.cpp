#include "gshift/best_approx.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "gshift/error.hpp"
#include "gshift/jacobi.hpp"

namespace gshift {

namespace {

void check_n(int n) {
  if (n < 1) throw DomainError("approximation size n must be >= 1");
  if (n > 512) throw DomainError("approximation size n must be <= 512");
}

std::vector<double> values_of(const RealFunction& f, std::span<const double> xs) {
  std::vector<double> v(xs.size());
  f.evaluate(xs, v);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw EvaluationError("non-finite function value", xs[i]);
  }
  return v;
}

// Rows T_0(x_i) .. T_{n-1}(x_i).
Eigen::MatrixXd chebyshev_design(std::span<const double> xs, int n) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(xs.size()), n);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    const double x = xs[i];
    a(r, 0) = 1.0;
    if (n > 1) a(r, 1) = x;
    for (int k = 2; k < n; ++k) a(r, k) = 2.0 * x * a(r, k - 1) - a(r, k - 2);
  }
  return a;
}

Eigen::VectorXd weighted_least_squares(const Eigen::MatrixXd& a, std::span<const double> rhs,
                                       std::span<const double> w) {
  Eigen::MatrixXd aw = a;
  Eigen::VectorXd b(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double s = std::sqrt(w[static_cast<std::size_t>(i)]);
    aw.row(i) *= s;
    b(i) = s * rhs[static_cast<std::size_t>(i)];
  }
  return aw.colPivHouseholderQr().solve(b);
}

ChebSeries to_series(const Eigen::VectorXd& c) { return ChebSeries(std::vector<double>(c.data(), c.data() + c.size())); }

double residual_norm(const RealFunction& f, const ChebSeries& p, double exponent, const WeightSpec& spec,
                     const NormConfig& cfg) {
  const auto ps = std::make_shared<ChebSeries>(p);
  const RealFunction diff("residual", [f, ps](std::span<const double> x, std::span<double> out) {
    f.evaluate(x, out);
    std::vector<double> pv(x.size());
    ps->evaluate(x, pv);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] -= pv[i];
  });
  return weighted_norm(diff, exponent, spec, cfg);
}

struct Grid {
  std::vector<double> x;
  std::vector<double> w;  // Si^alpha
  std::vector<double> f;
};

Grid make_grid(const RealFunction& f, const WeightSpec& spec, std::size_t size) {
  if (size < 3) throw DomainError("approximation grid needs at least 3 points");
  Grid g;
  g.x = chebyshev_extrema(size);
  g.w.resize(size);
  for (std::size_t i = 0; i < size; ++i) g.w[i] = std::pow(weight_value(spec.si, g.x[i]), spec.alpha);
  g.f = values_of(f, g.x);
  return g;
}

// Alternating local extrema of e over the active indices: one per run of
// constant sign, at the largest |e| of the run.
std::vector<std::size_t> alternating_extrema(const std::vector<double>& e, const std::vector<std::size_t>& active) {
  std::vector<std::size_t> out;
  int run_sign = 0;
  for (std::size_t i : active) {
    const int s = e[i] > 0.0 ? 1 : (e[i] < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (s != run_sign) {
      out.push_back(i);
      run_sign = s;
    } else if (std::fabs(e[i]) > std::fabs(e[out.back()])) {
      out.back() = i;
    }
  }
  return out;
}

// Drops extrema until n + 1 remain, preserving alternation.
void reduce_extrema(std::vector<std::size_t>& ext, const std::vector<double>& e, std::size_t target) {
  auto mag = [&](std::size_t j) { return std::fabs(e[ext[j]]); };
  while (ext.size() > target) {
    if (ext.size() == target + 1) {
      if (mag(0) < mag(ext.size() - 1)) {
        ext.erase(ext.begin());
      } else {
        ext.pop_back();
      }
      continue;
    }
    std::size_t j = 0;
    for (std::size_t k = 1; k < ext.size(); ++k) {
      if (mag(k) < mag(j)) j = k;
    }
    if (j == 0 || j + 1 == ext.size()) {
      ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(j));
    } else {
      const std::size_t nb = mag(j - 1) < mag(j + 1) ? j - 1 : j + 1;
      const std::size_t lo = std::min(j, nb);
      ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(lo), ext.begin() + static_cast<std::ptrdiff_t>(lo + 2));
    }
  }
}

// Classic one-point exchange bringing index m into the reference.
void single_exchange(std::vector<std::size_t>& ref, const std::vector<double>& e, std::size_t m) {
  auto sgn = [&](std::size_t i) { return e[i] >= 0.0; };
  if (std::find(ref.begin(), ref.end(), m) != ref.end()) return;
  if (m < ref.front()) {
    if (sgn(m) == sgn(ref.front())) {
      ref.front() = m;
    } else {
      ref.pop_back();
      ref.insert(ref.begin(), m);
    }
    return;
  }
  if (m > ref.back()) {
    if (sgn(m) == sgn(ref.back())) {
      ref.back() = m;
    } else {
      ref.erase(ref.begin());
      ref.push_back(m);
    }
    return;
  }
  const auto it = std::upper_bound(ref.begin(), ref.end(), m);
  auto hi = it;
  auto lo = it - 1;
  if (sgn(m) == sgn(*lo)) {
    *lo = m;
  } else {
    *hi = m;
  }
}

}  // namespace

ApproxResult best_approx_l2(const RealFunction& f, int n, const WeightSpec& spec, const ApproxOptions& options) {
  check_n(n);
  const double e2 = 2.0 * spec.alpha;
  const JacobiParams jp = spec.si == SiKind::kOneMinusUSquared ? JacobiParams{e2, e2} : JacobiParams{e2, 0.0};
  const std::size_t m = std::max(options.quadrature_size, static_cast<std::size_t>(n) + 1);
  const auto rule = cached_gauss_jacobi_rule(jp, m);
  const auto fv = values_of(f, rule->nodes);
  const auto a = chebyshev_design(rule->nodes, n);
  ApproxResult res;
  res.polynomial = to_series(weighted_least_squares(a, fv, rule->weights));
  res.error = residual_norm(f, res.polynomial, 2.0, spec, options.error_norm);
  res.method = "projection";
  return res;
}

ApproxResult best_approx_minimax(const RealFunction& f, int n, const WeightSpec& spec, const ApproxOptions& options) {
  check_n(n);
  const Grid g = make_grid(f, spec, options.grid_size);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    if (g.w[i] > 0.0) active.push_back(i);
  }
  const auto nn = static_cast<std::size_t>(n);
  if (active.size() < nn + 2) throw DomainError("approximation grid too coarse for n");

  // Initial reference near the extrema of T_n, mapped to distinct active indices.
  std::vector<std::size_t> ref(nn + 1);
  for (std::size_t j = 0; j <= nn; ++j) {
    const double target = -std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    const auto it = std::lower_bound(active.begin(), active.end(), target,
                                     [&](std::size_t i, double t) { return g.x[i] < t; });
    std::size_t pos = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - active.begin(), static_cast<std::ptrdiff_t>(active.size()) - 1));
    if (pos > 0 && std::fabs(g.x[active[pos - 1]] - target) < std::fabs(g.x[active[pos]] - target)) --pos;
    ref[j] = pos;
  }
  for (std::size_t j = 1; j <= nn; ++j) ref[j] = std::max(ref[j], ref[j - 1] + 1);
  for (std::size_t j = nn + 1; j-- > 0;) {
    const std::size_t cap = active.size() - 1 - (nn - j);
    ref[j] = std::min(ref[j], cap);
    if (j > 0) ref[j - 1] = std::min(ref[j - 1], ref[j] - 1);
  }
  for (auto& r : ref) r = active[r];

  const int max_iter = options.max_iterations > 0 ? options.max_iterations : 200;
  double fscale = 0.0;
  for (std::size_t i : active) fscale = std::max(fscale, std::fabs(g.w[i] * g.f[i]));

  ApproxResult best;
  double best_grid = INFINITY;
  std::vector<double> e(g.x.size(), 0.0), pv(g.x.size());
  bool converged = false;
  int iter = 0;
  for (iter = 1; iter <= max_iter; ++iter) {
    const Eigen::Index dim = n + 1;
    Eigen::MatrixXd sys(dim, dim);
    Eigen::VectorXd rhs(dim);
    std::vector<double> rx(nn + 1);
    for (std::size_t j = 0; j <= nn; ++j) rx[j] = g.x[ref[j]];
    sys.leftCols(n) = chebyshev_design(rx, n);
    for (std::size_t j = 0; j <= nn; ++j) {
      const auto r = static_cast<Eigen::Index>(j);
      sys(r, n) = (j % 2 == 0 ? 1.0 : -1.0) / g.w[ref[j]];
      rhs(r) = g.f[ref[j]];
    }
    const Eigen::VectorXd sol = sys.partialPivLu().solve(rhs);
    const double h = std::fabs(sol(n));
    const ChebSeries p = to_series(sol.head(n));
    p.evaluate(g.x, pv);
    double emax = 0.0;
    std::size_t imax = active.front();
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      e[i] = g.w[i] * (g.f[i] - pv[i]);
      if (std::fabs(e[i]) > emax) {
        emax = std::fabs(e[i]);
        imax = i;
      }
    }
    if (!std::isfinite(emax)) break;
    if (emax < best_grid) {
      best_grid = emax;
      best.polynomial = p;
    }
    if (emax - h <= 1e-8 * emax || emax <= 1e-15 * (1.0 + fscale)) {
      converged = true;
      break;
    }
    auto ext = alternating_extrema(e, active);
    std::vector<std::size_t> next;
    if (ext.size() >= nn + 1) {
      reduce_extrema(ext, e, nn + 1);
      next = ext;
      if (std::find(next.begin(), next.end(), imax) == next.end()) {
        next = ref;
        single_exchange(next, e, imax);
      }
    } else {
      next = ref;
      single_exchange(next, e, imax);
    }
    if (next == ref) break;
    ref = std::move(next);
  }
  best.iterations = std::min(iter, max_iter);
  best.converged = converged;
  best.method = "remez";
  best.error = residual_norm(f, best.polynomial, kInf, spec, options.error_norm);
  return best;
}

ApproxResult best_approx_lp(const RealFunction& f, int n, double p, const WeightSpec& spec,
                            const ApproxOptions& options) {
  check_n(n);
  if (!(p >= 1.0) || p == kInf) throw DomainError("IRLS needs 1 <= p < inf");
  const Grid g = make_grid(f, spec, options.grid_size);
  const auto cc = clenshaw_curtis_weights(options.grid_size);
  std::vector<double> xs, fs, sw, cw;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    if (cc[i] * g.w[i] > 0.0) {
      xs.push_back(g.x[i]);
      fs.push_back(g.f[i]);
      sw.push_back(g.w[i]);
      cw.push_back(cc[i]);
    }
  }
  if (xs.size() < static_cast<std::size_t>(n) + 1) throw DomainError("approximation grid too coarse for n");
  const auto a = chebyshev_design(xs, n);
  const double floor_r = p == 1.0 ? 1e-10 : 1e-12;
  const int max_iter = options.max_iterations > 0 ? options.max_iterations : 100;

  // Objective sum cw |e|^p with e = Si^alpha (f - P); the least-squares
  // surrogate weighs (f - P)^2 by cw Si^{2 alpha} |e|^{p-2}.
  std::vector<double> w(xs.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = cw[i] * sw[i] * sw[i];
  Eigen::VectorXd c = weighted_least_squares(a, fs, w);

  std::vector<double> res(xs.size());
  auto objective = [&](const Eigen::VectorXd& coef) {
    const Eigen::VectorXd pvals = a * coef;
    double acc = 0.0;
    for (std::size_t i = 0; i < res.size(); ++i) {
      res[i] = sw[i] * (fs[i] - pvals(static_cast<Eigen::Index>(i)));
      acc += cw[i] * std::pow(std::fabs(res[i]), p);
    }
    return std::pow(acc, 1.0 / p);
  };

  double phi = objective(c);
  double fscale = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) fscale = std::max(fscale, std::fabs(sw[i] * fs[i]));
  Eigen::VectorXd best = c;
  double best_phi = phi;
  bool converged = p == 2.0 || phi <= 1e-15 * (1.0 + fscale);
  int iter = 0;
  while (!converged && iter < max_iter) {
    ++iter;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double u = std::max(std::pow(std::max(std::fabs(res[i]), floor_r), p - 2.0), 1e-12);
      w[i] = cw[i] * sw[i] * sw[i] * u;
    }
    const Eigen::VectorXd ls = weighted_least_squares(a, fs, w);
    c += 0.5 * (ls - c);
    const double next = objective(c);
    if (next < best_phi) {
      best_phi = next;
      best = c;
    }
    converged = std::fabs(phi - next) < 1e-9 * phi || next <= 1e-15 * (1.0 + fscale);
    phi = next;
  }
  ApproxResult out;
  out.polynomial = to_series(best);
  out.iterations = iter;
  out.converged = converged;
  out.method = "irls";
  out.error = residual_norm(f, out.polynomial, p, spec, options.error_norm);
  return out;
}

ApproxResult compute_E(const RealFunction& f, int n, const SpaceParams& params, SiKind si,
                       const ApproxOptions& options) {
  const WeightSpec spec{si, params.alpha};
  if (params.is_sup()) return best_approx_minimax(f, n, spec, options);
  if (params.p == 2.0) return best_approx_l2(f, n, spec, options);
  return best_approx_lp(f, n, params.p, spec, options);
}

DyadicDecomposition dyadic_polys(const RealFunction& f, int N, const SpaceParams& params, SiKind si,
                                 const ApproxOptions& options) {
  if (N < 0 || N > 7) throw DomainError("dyadic depth N must be in [0, 7]");
  const WeightSpec spec{si, params.alpha};
  DyadicDecomposition out;
  for (int k = 0; k <= N; ++k) {
    const ApproxResult r = compute_E(f, 1 << k, params, si, options);
    DyadicLevel lvl;
    lvl.k = k;
    lvl.P = r.polynomial;
    lvl.E = r.error;
    if (k == 0) {
      lvl.Q = r.polynomial;
      lvl.triangle_bound = r.error + weighted_norm(f, params.p, spec, options.error_norm);
    } else {
      const auto& prev = out.levels.back();
      lvl.Q = r.polynomial - prev.P.resized(r.polynomial.degree());
      lvl.triangle_bound = r.error + prev.E;
    }
    lvl.Q_norm = weighted_norm(RealFunction::from_series("Q", lvl.Q), params.p, spec, options.error_norm);
    out.levels.push_back(std::move(lvl));
  }
  return out;
}

}  // namespace gshift
