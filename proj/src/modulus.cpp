#include "gshift/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gshift/error.hpp"

namespace gshift {

namespace {

std::vector<double> canonical(std::span<const double> steps) {
  std::vector<double> k(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) k[i] = std::fabs(steps[i]);
  std::sort(k.begin(), k.end());
  return k;
}

// Calls visit(point) for every point of the product of the per-axis lists.
template <class Visit>
void for_each_point(const std::vector<std::vector<double>>& axes, Visit&& visit) {
  std::vector<std::size_t> idx(axes.size(), 0);
  std::vector<double> point(axes.size());
  while (true) {
    for (std::size_t j = 0; j < axes.size(); ++j) point[j] = axes[j][idx[j]];
    visit(point);
    std::size_t j = 0;
    while (j < axes.size() && ++idx[j] == axes[j].size()) idx[j++] = 0;
    if (j == axes.size()) return;
  }
}

std::vector<double> axis_values(double center, double half_width, int g, double delta) {
  std::vector<double> v;
  for (int i = 0; i < g; ++i) {
    const double t = center - half_width + 2.0 * half_width * i / (g - 1);
    v.push_back(std::clamp(t, 0.0, delta));
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

ModulusSearch::ModulusSearch(ShiftKernelConfig cfg, RealFunction f, SpaceParams params, ModulusOptions options)
    : params_(params),
      options_(options),
      grid_(make_norm_grid(params.p, WeightSpec{cfg.si, params.alpha}, options.norm)),
      eval_(cfg, std::move(f), grid_.nodes) {
  f_norm_ = norm_from_values(grid_, eval_.f_values());
}

double ModulusSearch::difference_norm(std::span<const double> steps) {
  auto key = canonical(steps);
  if (auto it = norms_.find(key); it != norms_.end()) return it->second;
  // tau at t = 0 is the identity, so any zero step annihilates the difference.
  const double v = key.front() == 0.0 ? 0.0 : norm_from_values(grid_, eval_.difference(key));
  norms_.emplace(std::move(key), v);
  return v;
}

ModulusResult ModulusSearch::modulus(int r, double delta, std::span<const double> warm_start) {
  if (r < 1 || r > 3) throw DomainError("modulus order r must be in 1..3");
  if (!(delta >= 0.0 && delta < std::numbers::pi)) throw DomainError("delta must lie in [0, pi)");
  ModulusResult res;
  res.delta = delta;
  res.steps.assign(static_cast<std::size_t>(r), 0.0);
  if (delta == 0.0) return res;

  const int g = options_.grid_per_axis > 0 ? options_.grid_per_axis : (r <= 2 ? 9 : 5);
  const std::size_t before = norms_.size();
  double best = -1.0;
  std::vector<double> arg;
  auto consider = [&](const std::vector<double>& pt) {
    const double v = difference_norm(pt);
    if (v > best) {
      best = v;
      arg = canonical(pt);
    }
  };

  // Level 0: the lattice on [-delta, delta]^r, folded onto t >= 0 by symmetry.
  const auto base = axis_values(0.0, delta, 2 * g - 1, delta);
  for_each_point(std::vector<std::vector<double>>(static_cast<std::size_t>(r), base), consider);
  for (double t : base) {
    const std::vector<double> diag(static_cast<std::size_t>(r), t);
    res.equal_step_value = std::max(res.equal_step_value, difference_norm(diag));
  }
  if (!warm_start.empty()) {
    if (warm_start.size() != static_cast<std::size_t>(r)) throw DomainError("warm start has the wrong order");
    for (double t : warm_start) {
      if (std::fabs(t) > delta) throw DomainError("warm start lies outside the search cube");
    }
    consider(std::vector<double>(warm_start.begin(), warm_start.end()));
  }
  res.level0_value = best;
  res.levels = 1;

  double half = 2.0 * delta / (g - 1);
  for (int pass = 0; pass < options_.refinements; ++pass) {
    const auto center = arg;
    std::vector<std::vector<double>> axes;
    for (double c : center) axes.push_back(axis_values(c, half, g, delta));
    for_each_point(axes, consider);
    half *= 0.5;
    ++res.levels;
  }

  // Coordinate-wise golden-section polish inside the last refinement cell.
  if (options_.polish_iterations > 0) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t j = 0; j < arg.size(); ++j) {
      auto pt = arg;
      double lo = std::max(0.0, pt[j] - 2.0 * half), hi = std::min(delta, pt[j] + 2.0 * half);
      auto at = [&](double t) {
        pt[j] = t;
        const double v = difference_norm(pt);
        consider(pt);
        return v;
      };
      double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
      double fa = at(a), fb = at(b);
      for (int it = 0; it < options_.polish_iterations; ++it) {
        if (fa >= fb) {
          hi = b;
          b = a;
          fb = fa;
          a = hi - inv_phi * (hi - lo);
          fa = at(a);
        } else {
          lo = a;
          a = b;
          fa = fb;
          b = lo + inv_phi * (hi - lo);
          fb = at(b);
        }
      }
    }
    ++res.levels;
  }

  res.value = best;
  res.steps = arg;
  res.evaluations = norms_.size() - before;
  return res;
}

ModulusResult modulus(const ShiftKernelConfig& cfg, const RealFunction& f, int r, double delta,
                      const SpaceParams& params, const ModulusOptions& options) {
  ModulusSearch search(cfg, f, params, options);
  return search.modulus(r, delta);
}

std::vector<ModulusResult> modulus_curve(const ShiftKernelConfig& cfg, const RealFunction& f, int r,
                                         std::span<const double> deltas, const SpaceParams& params,
                                         const ModulusOptions& options) {
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0 && deltas[i] < std::numbers::pi)) throw DomainError("deltas must lie in (0, pi)");
    if (i > 0 && !(deltas[i] > deltas[i - 1])) throw DomainError("deltas must be strictly increasing");
  }
  ModulusSearch search(cfg, f, params, options);
  std::vector<ModulusResult> out;
  for (double d : deltas) {
    if (out.empty()) {
      out.push_back(search.modulus(r, d));
    } else {
      const auto warm = out.back().steps;
      out.push_back(search.modulus(r, d, warm));
    }
  }
  return out;
}

}  // namespace gshift
