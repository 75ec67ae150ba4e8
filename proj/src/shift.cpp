#include "gshift/shift.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <tuple>

#include "gshift/error.hpp"
#include "gshift/simd.hpp"

namespace gshift {

void validate(const ShiftKernelConfig& cfg) {
  if (cfg.quadrature_size < 8) throw DomainError("shift quadrature size must be at least 8");
  if (cfg.interp_degree < 1) throw DomainError("interpolation degree must be at least 1");
}

namespace {

struct ZNodes {
  std::vector<double> z;
  std::vector<double> si_z;
  std::vector<double> ones;
};

// Chebyshev-Gauss nodes for the weight 1/sqrt(1 - z^2); every weight is pi/m.
const ZNodes& z_nodes(std::size_t m, SiKind si) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, SiKind>, std::unique_ptr<ZNodes>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{m, si}];
  if (!slot) {
    slot = std::make_unique<ZNodes>();
    slot->z.resize(m);
    slot->si_z.resize(m);
    slot->ones.assign(m, 1.0);
    for (std::size_t k = 0; k < m; ++k) {
      const double z = std::cos(std::numbers::pi * (2.0 * static_cast<double>(k) + 1.0) /
                                (2.0 * static_cast<double>(m)));
      slot->z[k] = z;
      slot->si_z[k] = si == SiKind::kOneMinusUSquared ? 1.0 - z * z : 1.0 - z;
    }
  }
  return *slot;
}

void check_y(double y) {
  if (!(y > -1.0)) throw SingularArgumentError("shift parameter y must exceed -1, got " + std::to_string(y));
  if (!(y <= 1.0)) throw DomainError("shift parameter y must not exceed 1, got " + std::to_string(y));
}

void check_x(double x) {
  if (!(std::fabs(x) < 1.0)) {
    throw SingularArgumentError("shift evaluation point must satisfy |x| < 1, got " + std::to_string(x));
  }
}

double si_of(SiKind si, double u) { return si == SiKind::kOneMinusUSquared ? 1.0 - u * u : 1.0 - u; }

std::size_t exact_size(const ShiftKernelConfig& cfg, const RealFunction& f) {
  // The z-integrand of a degree-d polynomial has degree d + 4; Chebyshev-Gauss
  // with m nodes integrates degree 2m - 1 exactly.
  if (auto d = f.polynomial_degree()) {
    return std::max(cfg.quadrature_size, static_cast<std::size_t>(*d) / 2 + 3);
  }
  return cfg.quadrature_size;
}

std::vector<double> shift_values(const ShiftKernelConfig& cfg, const RealFunction& f, double y,
                                 std::span<const double> xs, std::size_t m) {
  check_y(y);
  for (double x : xs) check_x(x);
  const ZNodes& zn = z_nodes(m, cfg.si);
  const bool squared = cfg.si == SiKind::kOneMinusUSquared;
  const std::size_t block = std::max<std::size_t>(1, 16384 / m);
  std::vector<double> r(block * m);
  std::vector<double> fr(block * m);
  std::vector<simd::ShiftBracket> brackets(block);
  std::vector<double> out(xs.size());
  const double scale = 4.0 / (static_cast<double>(m) * (1.0 + y) * (1.0 + y));

  for (std::size_t start = 0; start < xs.size(); start += block) {
    const std::size_t nb = std::min(block, xs.size() - start);
    for (std::size_t j = 0; j < nb; ++j) {
      brackets[j] = simd::make_bracket(xs[start + j], y, squared);
      simd::shift_arguments(brackets[j], zn.z, std::span<double>(r.data() + j * m, m));
    }
    // Rounding can push |R| a hair past 1.
    for (std::size_t i = 0; i < nb * m; ++i) r[i] = std::clamp(r[i], -1.0, 1.0);
    f.evaluate(std::span<const double>(r.data(), nb * m), std::span<double>(fr.data(), nb * m));
    for (std::size_t i = 0; i < nb * m; ++i) {
      if (!std::isfinite(fr[i])) throw EvaluationError("non-finite f(R) in shift quadrature", r[i]);
    }
    for (std::size_t j = 0; j < nb; ++j) {
      const std::span<const double> rj(r.data() + j * m, m);
      const std::span<const double> fj(fr.data() + j * m, m);
      const double acc = simd::shift_accumulate(brackets[j], zn.z, zn.si_z, rj, fj);
      if (cfg.enforce_normalization) {
        const double one = simd::shift_accumulate(brackets[j], zn.z, zn.si_z, rj, zn.ones);
        out[start + j] = acc / one;
      } else {
        out[start + j] = scale * acc / si_of(cfg.si, xs[start + j]);
      }
    }
  }
  return out;
}

std::vector<double> values_of(const RealFunction& f, std::span<const double> xs) {
  std::vector<double> v(xs.size());
  f.evaluate(xs, v);
  return v;
}

std::vector<double> cosines(std::span<const double> steps) {
  std::vector<double> ys(steps.size());
  for (std::size_t j = 0; j < steps.size(); ++j) {
    if (!(std::fabs(steps[j]) < std::numbers::pi)) {
      throw DomainError("difference steps must satisfy |t| < pi, got " + std::to_string(steps[j]));
    }
    ys[j] = std::cos(steps[j]);
  }
  return ys;
}

}  // namespace

KernelValue kernel_B(const ShiftKernelConfig& cfg, double y, double x, double z) {
  check_y(y);
  check_x(x);
  if (!(std::fabs(z) <= 1.0)) throw DomainError("kernel variable z must lie in [-1, 1]");
  const double sx = std::sqrt(1.0 - x * x);
  const double sy = std::sqrt(std::fmax(0.0, 1.0 - y * y));
  KernelValue v;
  v.R = x * y - sx * sy * z;
  const double bracket = sx * y + x * z * sy + sx * (1.0 - y) * si_of(cfg.si, z);
  v.B = 2.0 * bracket * bracket - si_of(cfg.si, std::clamp(v.R, -1.0, 1.0));
  return v;
}

double apply_shift(const ShiftKernelConfig& cfg, const RealFunction& f, double y, double x) {
  return apply_shift(cfg, f, y, std::span<const double>(&x, 1)).front();
}

std::vector<double> apply_shift(const ShiftKernelConfig& cfg, const RealFunction& f, double y,
                                std::span<const double> xs) {
  validate(cfg);
  return shift_values(cfg, f, y, xs, exact_size(cfg, f));
}

ChebSeries materialize_shift(const ShiftKernelConfig& cfg, const RealFunction& f, double y,
                             std::size_t degree) {
  validate(cfg);
  const auto pts = chebyshev_points(degree + 1);
  const auto v = shift_values(cfg, f, y, pts, exact_size(cfg, f));
  return ChebSeries::interpolate(v);
}

std::vector<double> shift_power(const ShiftKernelConfig& cfg, const RealFunction& f,
                                std::span<const double> ys, std::span<const double> xs) {
  validate(cfg);
  if (ys.empty()) throw DomainError("shift power needs at least one shift parameter");
  RealFunction g = f;
  for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
    g = RealFunction::from_series("power", materialize_shift(cfg, g, ys[j], cfg.interp_degree));
  }
  return shift_values(cfg, g, ys.back(), xs, exact_size(cfg, g));
}

double shift_power(const ShiftKernelConfig& cfg, const RealFunction& f, std::span<const double> ys,
                   double x) {
  return shift_power(cfg, f, ys, std::span<const double>(&x, 1)).front();
}

namespace {

std::vector<double> recursive_difference(const ShiftKernelConfig& cfg, const RealFunction& f,
                                         std::span<const double> ys, std::span<const double> xs) {
  const std::size_t r = ys.size();
  if (r == 1) {
    auto out = shift_values(cfg, f, ys[0], xs, exact_size(cfg, f));
    const auto fx = values_of(f, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] -= fx[i];
    return out;
  }
  const auto pts = chebyshev_points(cfg.interp_degree + 1);
  const auto inner = recursive_difference(cfg, f, ys.first(r - 1), pts);
  const RealFunction g = RealFunction::from_series("difference", ChebSeries::interpolate(inner));
  auto out = shift_values(cfg, g, ys[r - 1], xs, exact_size(cfg, g));
  const auto gx = values_of(g, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] -= gx[i];
  return out;
}

}  // namespace

std::vector<double> generalized_difference(const ShiftKernelConfig& cfg, const RealFunction& f,
                                           const DifferenceQuery& q, std::span<const double> xs) {
  validate(cfg);
  if (q.steps.empty()) throw DomainError("difference order must be at least 1");
  const auto ys = cosines(q.steps);
  return recursive_difference(cfg, f, ys, xs);
}

double generalized_difference(const ShiftKernelConfig& cfg, const RealFunction& f,
                              const DifferenceQuery& q, double x) {
  return generalized_difference(cfg, f, q, std::span<const double>(&x, 1)).front();
}

std::vector<double> difference_via_inclusion_exclusion(const ShiftKernelConfig& cfg,
                                                       const RealFunction& f,
                                                       const DifferenceQuery& q,
                                                       std::span<const double> xs) {
  validate(cfg);
  const int r = q.order();
  if (r < 1) throw DomainError("difference order must be at least 1");
  if (r > 16) throw DomainError("difference order above 16 is not supported");
  const auto ys = cosines(q.steps);

  // Materialized tau^S f, keyed by subset mask; the power is applied in index order.
  std::map<unsigned, ChebSeries> inner;
  auto series_for = [&](auto&& self, unsigned mask) -> const ChebSeries& {
    if (auto it = inner.find(mask); it != inner.end()) return it->second;
    const int last = std::bit_width(mask) - 1;
    const unsigned rest = mask & ~(1u << last);
    RealFunction g = rest == 0 ? f : RealFunction::from_series("power", self(self, rest));
    return inner.emplace(mask, materialize_shift(cfg, g, ys[last], cfg.interp_degree)).first->second;
  };

  std::vector<double> out = values_of(f, xs);
  if (r % 2 == 1) {
    for (double& v : out) v = -v;
  }
  for (unsigned mask = 1; mask < (1u << r); ++mask) {
    const int k = std::popcount(mask);
    const double sign = ((r - k) % 2 == 0) ? 1.0 : -1.0;
    const int last = std::bit_width(mask) - 1;
    const unsigned rest = mask & ~(1u << last);
    RealFunction g = rest == 0 ? f : RealFunction::from_series("power", series_for(series_for, rest));
    const auto v = shift_values(cfg, g, ys[last], xs, exact_size(cfg, g));
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] += sign * v[i];
  }
  return out;
}

double difference_via_inclusion_exclusion(const ShiftKernelConfig& cfg, const RealFunction& f,
                                          const DifferenceQuery& q, double x) {
  return difference_via_inclusion_exclusion(cfg, f, q, std::span<const double>(&x, 1)).front();
}

DifferenceEvaluator::DifferenceEvaluator(ShiftKernelConfig cfg, RealFunction f, std::vector<double> xs)
    : cfg_(cfg), f_(std::move(f)), xs_(std::move(xs)) {
  validate(cfg_);
  for (double x : xs_) check_x(x);
  fx_ = values_of(f_, xs_);
}

const ChebSeries& DifferenceEvaluator::power_series(const std::vector<double>& ys) {
  if (auto it = series_.find(ys); it != series_.end()) return it->second;
  ChebSeries s;
  if (ys.size() == 1) {
    s = materialize_shift(cfg_, f_, ys[0], cfg_.interp_degree);
  } else {
    const std::vector<double> rest(ys.begin(), ys.end() - 1);
    const RealFunction g = RealFunction::from_series("power", power_series(rest));
    s = materialize_shift(cfg_, g, ys.back(), cfg_.interp_degree);
  }
  return series_.emplace(ys, std::move(s)).first->second;
}

const std::vector<double>& DifferenceEvaluator::power_values(const std::vector<double>& ys) {
  if (auto it = values_.find(ys); it != values_.end()) return it->second;
  std::vector<double> v;
  const auto deg = f_.polynomial_degree();
  if (ys.size() == 1 && deg && static_cast<std::size_t>(std::max(*deg, 0)) <= cfg_.interp_degree) {
    // Exact: tau_y keeps the degree, so d + 1 Chebyshev samples determine it.
    v.resize(xs_.size());
    materialize_shift(cfg_, f_, ys[0], static_cast<std::size_t>(std::max(*deg, 1))).evaluate(xs_, v);
  } else if (ys.size() == 1) {
    v = shift_values(cfg_, f_, ys[0], xs_, exact_size(cfg_, f_));
  } else {
    // The image of a polynomial is a polynomial of the same degree, so the
    // materialized power is evaluated instead of a fresh quadrature per node.
    v.resize(xs_.size());
    power_series(ys).evaluate(xs_, v);
  }
  return values_.emplace(ys, std::move(v)).first->second;
}

std::vector<double> DifferenceEvaluator::difference(std::span<const double> steps) {
  const int r = static_cast<int>(steps.size());
  if (r < 1 || r > 16) throw DomainError("difference order must be in [1, 16]");
  const auto ys = cosines(steps);
  std::vector<double> out(fx_);
  if (r % 2 == 1) {
    for (double& v : out) v = -v;
  }
  for (unsigned mask = 1; mask < (1u << r); ++mask) {
    std::vector<double> key;
    for (int j = 0; j < r; ++j) {
      if (mask & (1u << j)) key.push_back(ys[static_cast<std::size_t>(j)]);
    }
    std::sort(key.begin(), key.end());
    const double sign = ((r - static_cast<int>(key.size())) % 2 == 0) ? 1.0 : -1.0;
    const auto& v = power_values(key);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += sign * v[i];
  }
  return out;
}

double boundedness_ratio(const ShiftKernelConfig& cfg, const RealFunction& f, double t,
                         const SpaceParams& params, const NormConfig& norm) {
  const NormGrid grid = make_norm_grid(params.p, WeightSpec{cfg.si, params.alpha}, norm);
  const auto fx = values_of(f, grid.nodes);
  const double nf = norm_from_values(grid, fx);
  if (!(nf > 0.0)) throw DegenerateInputError("boundedness ratio of a function with zero norm");
  const auto shifted = apply_shift(cfg, f, std::cos(t), grid.nodes);
  return norm_from_values(grid, shifted) * co_value(t) / nf;
}

double difference_ratio(const ShiftKernelConfig& cfg, const RealFunction& f,
                        std::span<const double> steps, const SpaceParams& params,
                        const NormConfig& norm) {
  const NormGrid grid = make_norm_grid(params.p, WeightSpec{cfg.si, params.alpha}, norm);
  DifferenceEvaluator eval(cfg, f, grid.nodes);
  const double nf = norm_from_values(grid, eval.f_values());
  if (!(nf > 0.0)) throw DegenerateInputError("difference ratio of a function with zero norm");
  double co = 1.0;
  for (double t : steps) co *= co_value(t);
  return norm_from_values(grid, eval.difference(steps)) * co / nf;
}

std::vector<double> interior_grid(std::size_t n, double bound) {
  if (n < 2) return {0.0};
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = -bound + 2.0 * bound * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return g;
}

namespace {

std::vector<RealFunction> default_identity_functions() {
  return {
      RealFunction::from_scalar("x^2", [](double x) { return x * x; }, 2),
      RealFunction::from_scalar("exp", [](double x) { return std::exp(x); }),
      RealFunction::from_scalar("cos3x", [](double x) { return std::cos(3.0 * x); }),
      RealFunction::from_scalar("absshift:0.25", [](double x) { return std::fabs(x - 0.25); }),
  };
}

PropertyResidual make_residual(std::string name, double residual, double tol) {
  return PropertyResidual{std::move(name), residual, tol, residual <= tol};
}

InterpretationReport validate_interpretation(const ShiftKernelConfig& base, SiKind si,
                                             std::span<const double> xs, std::span<const double> ys,
                                             const KernelValidationOptions& opt) {
  ShiftKernelConfig cfg = base;
  cfg.si = si;
  cfg.enforce_normalization = false;
  InterpretationReport rep;
  rep.si = si;

  const auto one = RealFunction::constant(1.0);
  double norm_res = 0.0;
  for (double y : ys) {
    const auto v = apply_shift(cfg, one, y, xs);
    for (double t : v) norm_res = std::max(norm_res, std::fabs(t - 1.0));
  }

  const auto fns = opt.test_functions.empty() ? default_identity_functions() : opt.test_functions;
  double ident_res = 0.0;
  for (const auto& f : fns) {
    const auto v = apply_shift(cfg, f, 1.0, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) ident_res = std::max(ident_res, std::fabs(v[i] - f(xs[i])));
  }

  // Linearity on two of the test functions with fixed coefficients.
  double lin_res = 0.0;
  if (fns.size() >= 2) {
    const double a = 0.7, b = -1.3;
    const auto combo = linear_combination(a, fns[0], b, fns[1]);
    for (double y : {ys.front(), ys[ys.size() / 2]}) {
      const auto lhs = apply_shift(cfg, combo, y, xs);
      const auto t0 = apply_shift(cfg, fns[0], y, xs);
      const auto t1 = apply_shift(cfg, fns[1], y, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double rhs = a * t0[i] + b * t1[i];
        lin_res = std::max(lin_res, std::fabs(lhs[i] - rhs) / (1.0 + std::fabs(rhs)));
      }
    }
  }

  double eig_res = 0.0;
  for (int nu = 0; nu <= opt.max_degree; ++nu) {
    const auto pnu = RealFunction::from_scalar(
        "P", [&, nu](double u) { return eval_jacobi(opt.basis.expansion, nu, u); }, nu);
    for (double y : ys) {
      const double mult = eval_jacobi(opt.basis.multiplier, nu, y);
      const auto v = apply_shift(cfg, pnu, y, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double expect = eval_jacobi(opt.basis.expansion, nu, xs[i]) * mult;
        eig_res = std::max(eig_res, std::fabs(v[i] - expect) / (1.0 + std::fabs(expect)));
      }
    }
  }

  // Multiplier property on seeded random polynomials of degree max_degree.
  std::mt19937 rng(opt.seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const std::size_t mq = cfg.quadrature_size;
  const auto rule = cached_gauss_jacobi_rule(si_squared_weight(si), mq);
  double mult_res = 0.0;
  const std::vector<double> mult_ys = {-0.5, 0.0, 0.3, 0.7, 0.9};
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> c(static_cast<std::size_t>(opt.max_degree) + 1);
    for (double& v : c) v = coef(rng);
    const auto f = RealFunction::from_series("random-poly", ChebSeries(c));
    std::vector<double> fx(rule->size());
    f.evaluate(rule->nodes, fx);
    for (double y : mult_ys) {
      const auto tf = apply_shift(cfg, f, y, rule->nodes);
      for (int n = 0; n <= opt.max_degree; ++n) {
        double an_f = 0.0, an_tf = 0.0;
        for (std::size_t i = 0; i < rule->size(); ++i) {
          const double pn = eval_jacobi(opt.basis.expansion, n, rule->nodes[i]);
          an_f += rule->weights[i] * fx[i] * pn;
          an_tf += rule->weights[i] * tf[i] * pn;
        }
        const double expect = an_f * eval_jacobi(opt.basis.multiplier, n, y);
        mult_res = std::max(mult_res, std::fabs(an_tf - expect) / (1.0 + std::fabs(expect)));
      }
    }
  }

  rep.properties.push_back(make_residual("linearity", lin_res, 1e-12));
  rep.properties.push_back(make_residual("identity", ident_res, 1e-8));
  rep.properties.push_back(make_residual("eigenfunction", eig_res, 1e-6));
  rep.properties.push_back(make_residual("normalization", norm_res, 1e-6));
  rep.properties.push_back(make_residual("multiplier", mult_res, 1e-6));
  rep.normalization_passed = norm_res <= 1e-6;
  return rep;
}

}  // namespace

KernelValidationReport validate_kernel(const ShiftKernelConfig& cfg, std::span<const double> x_grid,
                                       std::span<const double> y_grid,
                                       const KernelValidationOptions& options) {
  validate(cfg);
  if (x_grid.empty() || y_grid.empty()) throw DomainError("validation grids must be nonempty");
  KernelValidationReport report;
  report.x_grid_size = x_grid.size();
  report.y_grid_size = y_grid.size();
  report.quadrature_size = cfg.quadrature_size;
  report.max_degree = options.max_degree;
  report.basis = options.basis;
  double best = kInf;
  for (SiKind si : {SiKind::kOneMinusUSquared, SiKind::kOneMinusU}) {
    auto rep = validate_interpretation(cfg, si, x_grid, y_grid, options);
    if (rep.normalization_passed) {
      const double res = std::find_if(rep.properties.begin(), rep.properties.end(), [](const auto& p) {
                           return p.property == "normalization";
                         })->residual;
      if (res < best) {
        best = res;
        report.accepted = si;
        report.any_passed = true;
      }
    }
    report.interpretations.push_back(std::move(rep));
  }
  return report;
}

ShiftKernelConfig resolve_kernel_config(ShiftKernelConfig base, KernelValidationReport* report) {
  const auto grid = interior_grid(21);
  KernelValidationOptions opt;
  auto rep = validate_kernel(base, grid, grid, opt);
  if (rep.any_passed) {
    base.si = rep.accepted;
    base.enforce_normalization = false;
  } else {
    base.si = SiKind::kOneMinusUSquared;
    base.enforce_normalization = true;
  }
  if (report != nullptr) *report = std::move(rep);
  return base;
}

}  // namespace gshift
