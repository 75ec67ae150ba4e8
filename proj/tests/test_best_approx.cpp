#include <doctest.h>

#include <cmath>
#include <random>

#include "gshift/best_approx.hpp"
#include "gshift/error.hpp"
#include "gshift/jacobi.hpp"

using namespace gshift;

namespace {

RealFunction monomial(int d) {
  return RealFunction::from_scalar("x^d", [d](double x) { return std::pow(x, d); }, d);
}

RealFunction absshift(double c) {
  return RealFunction::from_scalar("abs", [c](double x) { return std::fabs(x - c); });
}

RealFunction expf() {
  return RealFunction::from_scalar("exp", [](double x) { return std::exp(x); });
}

// Max of |x^2 - a - b x| over a fine grid, minimized over (a, b) by zooming lattices.
double brute_line_minimax() {
  std::vector<double> xs;
  for (int i = 0; i <= 4000; ++i) xs.push_back(-1.0 + i / 2000.0);
  auto obj = [&](double a, double b) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::fabs(x * x - a - b * x));
    return m;
  };
  double ca = 0.0, cb = 0.0, h = 1.0, best = obj(ca, cb);
  for (int level = 0; level < 25; ++level) {
    double na = ca, nb = cb;
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double v = obj(ca + i * h / 10, cb + j * h / 10);
        if (v < best) {
          best = v;
          na = ca + i * h / 10;
          nb = cb + j * h / 10;
        }
      }
    }
    ca = na;
    cb = nb;
    h *= 0.5;
  }
  return best;
}

// (int |x^2 - c|^4 dx)^(1/4) minimized over c by dense scan then zoom.
double brute_constant_l4() {
  const auto rule = gauss_jacobi_rule({0, 0}, 64);
  auto obj = [&](double c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      // |x^2 - c|^4 is a polynomial, so Gauss-Legendre is exact.
      acc += rule.weights[i] * std::pow(rule.nodes[i] * rule.nodes[i] - c, 4);
    }
    return std::pow(acc, 0.25);
  };
  double c = 0.0, h = 0.01, best = obj(0.0);
  for (int i = 0; i <= 100; ++i) {
    if (obj(i * h) < best) {
      best = obj(i * h);
      c = i * h;
    }
  }
  for (int level = 0; level < 30; ++level) {
    for (int i = -10; i <= 10; ++i) {
      const double v = obj(c + i * h / 10);
      if (v < best) {
        best = v;
        c += i * h / 10;
      }
    }
    h *= 0.5;
  }
  return best;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_SUITE("best_approximation") {
  TEST_CASE("polynomials of degree < n are reproduced for every p") {
    for (double p : {1.5, 2.0, 4.0, kInf}) {
      for (double alpha : {0.0, 1.0}) {
        for (int d = 0; d <= 5; ++d) {
          const auto r = compute_E(monomial(d), d + 1, {p, alpha}, SiKind::kOneMinusUSquared);
          CAPTURE(p);
          CAPTURE(d);
          CHECK(r.error <= 1e-10);
        }
      }
    }
  }

  TEST_CASE("L2 projection examples") {
    const auto r = best_approx_l2(monomial(2), 1, {SiKind::kOneMinusUSquared, 0.0});
    CHECK(r.polynomial(0.3) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(r.error == doctest::Approx(std::sqrt(8.0 / 45.0)).epsilon(1e-12));

    // Residual orthogonal to T_k, k < n, against Si^{2 alpha}, checked by an independent rule.
    const auto f = expf();
    const int n = 6;
    const auto proj = best_approx_l2(f, n, {SiKind::kOneMinusUSquared, 1.0});
    const auto gl = gauss_jacobi_rule({0, 0}, 200);
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < gl.size(); ++i) {
        const double x = gl.nodes[i];
        acc += gl.weights[i] * (f(x) - proj.polynomial(x)) * std::cos(k * std::acos(x)) * std::pow(1 - x * x, 2);
      }
      CHECK(std::fabs(acc) <= 1e-10);
    }
  }

  TEST_CASE("minimax: best line to x^2 and a brute-force oracle") {
    const auto r = best_approx_minimax(monomial(2), 2, {SiKind::kOneMinusUSquared, 0.0});
    CHECK(r.converged);
    CHECK(std::fabs(r.error - 0.5) <= 1e-6);
    CHECK(std::fabs(r.error - brute_line_minimax()) <= 1e-5);
  }

  TEST_CASE("minimax: |x| decays like 1/n") {
    std::vector<double> ns, es;
    for (int n : {4, 8, 16, 32, 64, 128}) {
      const auto r = best_approx_minimax(absshift(0.0), n, {SiKind::kOneMinusUSquared, 0.0});
      CHECK(r.converged);
      ns.push_back(n);
      es.push_back(r.error);
    }
    CHECK(slope(ns, es) == doctest::Approx(1.0).epsilon(0.1));
  }

  TEST_CASE("minimax: equioscillation witness") {
    for (double alpha : {0.0, 1.0}) {
      for (int n : {3, 8, 17}) {
        const WeightSpec spec{SiKind::kOneMinusUSquared, alpha};
        const auto f = absshift(0.25);
        const auto r = best_approx_minimax(f, n, spec);
        REQUIRE(r.converged);
        const auto xs = chebyshev_extrema(2049);
        int count = 0, last_sign = 0;
        for (double x : xs) {
          const double e = std::pow(weight_value(spec, x), alpha) * (f(x) - r.polynomial(x));
          if (std::fabs(e) >= 0.95 * r.error) {
            const int s = e > 0 ? 1 : -1;
            if (s != last_sign) {
              ++count;
              last_sign = s;
            }
          }
        }
        CAPTURE(n);
        CHECK(count >= n + 1);
      }
    }
  }

  TEST_CASE("IRLS examples") {
    const WeightSpec plain{SiKind::kOneMinusUSquared, 0.0};
    const auto r4 = best_approx_lp(monomial(2), 1, 4.0, plain);
    CHECK(r4.converged);
    CHECK(std::fabs(r4.error - brute_constant_l4()) <= 1e-5);

    for (double alpha : {0.0, 1.0}) {
      const WeightSpec spec{SiKind::kOneMinusUSquared, alpha};
      for (const auto& f : {expf(), absshift(0.25)}) {
        for (int n : {1, 4, 10}) {
          const double a = best_approx_lp(f, n, 2.0, spec).error;
          const double b = best_approx_l2(f, n, spec).error;
          CHECK(std::fabs(a - b) <= 1e-7 * b + 1e-15);
        }
      }
    }
  }

  TEST_CASE("E_n is nonincreasing and dominated by explicit polynomials") {
    for (double p : {1.5, 2.0, 4.0, kInf}) {
      for (const auto& f : {expf(), absshift(0.25)}) {
        double prev = INFINITY;
        for (int n = 1; n <= 12; ++n) {
          const auto r = compute_E(f, n, {p, 1.0}, SiKind::kOneMinusUSquared);
          CAPTURE(p);
          CAPTURE(n);
          CHECK(r.error <= prev + 1e-9);
          CHECK(r.error <= weighted_norm(f, p, {SiKind::kOneMinusUSquared, 1.0}) + 1e-10);
          prev = r.error;

          // Truncated Chebyshev interpolant of degree n - 1.
          const auto pts = chebyshev_points(64);
          std::vector<double> v(pts.size());
          for (std::size_t i = 0; i < pts.size(); ++i) v[i] = f(pts[i]);
          const auto q = ChebSeries::interpolate(v).resized(static_cast<std::size_t>(n - 1));
          const auto diff = RealFunction::from_scalar("d", [&](double x) { return f(x) - q(x); });
          CHECK(r.error <= weighted_norm(diff, p, {SiKind::kOneMinusUSquared, 1.0}) + 1e-8);
        }
      }
    }
  }

  TEST_CASE("dyadic decomposition") {
    const SpaceParams params{kInf, 1.0};
    const auto lin = RealFunction::from_scalar("lin", [](double x) { return 2.0 * x - 0.5; }, 1);
    const auto d = dyadic_polys(lin, 4, params, SiKind::kOneMinusUSquared);
    REQUIRE(d.levels.size() == 5);
    // P_2 already reproduces a line, so only Q_1 = f - P_1 is nonzero past k = 0.
    for (std::size_t k = 2; k < d.levels.size(); ++k) CHECK(d.levels[k].Q_norm <= 1e-9);
    CHECK(d.levels[1].Q(0.3) == doctest::Approx(lin(0.3) - d.levels[0].P(0.3)).epsilon(1e-12));

    const auto f = absshift(0.25);
    const auto dd = dyadic_polys(f, 5, params, SiKind::kOneMinusUSquared);
    ChebSeries sum = ChebSeries::zero(dd.levels.back().P.degree());
    for (const auto& lvl : dd.levels) {
      CHECK(lvl.Q_norm <= lvl.triangle_bound + 1e-8);
      sum += lvl.Q.resized(sum.degree());
    }
    const auto& top = dd.levels.back().P;
    for (std::size_t i = 0; i <= top.degree(); ++i) CHECK(std::fabs(sum.coeffs()[i] - top.coeffs()[i]) <= 1e-10);
    CHECK_THROWS_AS(dyadic_polys(f, 8, params, SiKind::kOneMinusUSquared), DomainError);
  }

  TEST_CASE("invalid sizes are rejected") {
    CHECK_THROWS_AS(compute_E(expf(), 0, {2.0, 0.0}, SiKind::kOneMinusUSquared), DomainError);
    CHECK_THROWS_AS(best_approx_lp(expf(), 3, kInf, {}), DomainError);
  }
}
