#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gshift/error.hpp"
#include "gshift/shift.hpp"

using namespace gshift;

namespace {

const ShiftKernelConfig kCfg{};
const BasisPair kBasis{};

RealFunction eigen_poly(int nu) {
  return RealFunction::from_scalar(
      "eigen", [nu](double x) { return eval_jacobi(kBasis.expansion, nu, x); }, nu);
}

// Smooth test function: random decaying Chebyshev series plus an exponential.
RealFunction random_smooth(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> c(16);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = d(rng) / static_cast<double>(1 + k * k);
  const double s = d(rng);
  ChebSeries series(c);
  return RealFunction::from_scalar("smooth", [series, s](double x) { return series(x) + std::exp(s * x); });
}

}  // namespace

TEST_SUITE("shift_operator") {
  TEST_CASE("kernel_B examples") {
    for (double x : {-0.9, -0.1, 0.0, 0.5, 0.99}) {
      for (double z : {-1.0, 0.2, 1.0}) CHECK(kernel_B(kCfg, 1.0, x, z).R == x);
    }
    CHECK(kernel_B(kCfg, 0.0, 0.0, 1.0).R == -1.0);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(-0.999, 0.999);
    std::uniform_real_distribution<double> dz(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
      const double y = d(rng), x = d(rng), z = dz(rng);
      const auto kv = kernel_B(kCfg, y, x, z);
      CHECK(std::fabs(kv.R) <= 1.0 + 1e-15);
      CHECK(std::fabs(x * y) + std::sqrt(1 - x * x) * std::sqrt(1 - y * y) <= 1.0 + 1e-15);
    }
  }

  TEST_CASE("singular arguments are rejected") {
    const auto f = RealFunction::constant(1.0);
    CHECK_THROWS_AS(kernel_B(kCfg, 0.5, 1.0, 0.0), SingularArgumentError);
    CHECK_THROWS_AS(kernel_B(kCfg, -1.0, 0.3, 0.0), SingularArgumentError);
    CHECK_THROWS_AS(apply_shift(kCfg, f, 0.5, -1.0), SingularArgumentError);
    CHECK_THROWS_AS(apply_shift(kCfg, f, -1.0, 0.2), SingularArgumentError);
    CHECK_THROWS_AS(apply_shift(ShiftKernelConfig{SiKind::kOneMinusUSquared, 4}, f, 0.5, 0.2), DomainError);
  }

  TEST_CASE("non-finite f(R) raises an evaluation error") {
    const auto bad = RealFunction::from_scalar("bad", [](double u) { return u > 0.2 ? NAN : u; });
    CHECK_THROWS_AS(apply_shift(kCfg, bad, 0.3, 0.4), EvaluationError);
  }

  TEST_CASE("identity at y = 1 and normalization") {
    std::mt19937 rng(8);
    const auto xs = interior_grid(41, 0.999);
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_smooth(rng);
      const auto v = apply_shift(kCfg, f, 1.0, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::fabs(v[i] - f(xs[i])) <= 1e-8);
    }
    const auto one = RealFunction::constant(1.0);
    for (double y : {-0.95, -0.5, 0.0, 0.4, 0.99, 1.0}) {
      const auto v = apply_shift(kCfg, one, y, xs);
      for (double t : v) CHECK(std::fabs(t - 1.0) <= 1e-9);
    }
  }

  TEST_CASE("Jacobi (2,2) polynomials are eigenfunctions with (0,4) multipliers") {
    const auto xs = interior_grid(17, 0.97);
    for (int nu = 0; nu <= 10; ++nu) {
      const auto p = eigen_poly(nu);
      for (double y : {-0.8, -0.3, 0.2, 0.75}) {
        const double m = eval_jacobi(kBasis.multiplier, nu, y);
        const auto v = apply_shift(kCfg, p, y, xs);
        for (std::size_t i = 0; i < xs.size(); ++i) {
          const double expect = p(xs[i]) * m;
          CHECK(std::fabs(v[i] - expect) <= 1e-10 * (1 + std::fabs(expect)));
        }
      }
    }
  }

  TEST_CASE("linearity") {
    std::mt19937 rng(9);
    const auto xs = interior_grid(23);
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_smooth(rng), g = random_smooth(rng);
      const double a = 1.7, b = -0.4;
      const auto lhs = apply_shift(kCfg, linear_combination(a, f, b, g), 0.1 * trial - 0.2, xs);
      const auto tf = apply_shift(kCfg, f, 0.1 * trial - 0.2, xs);
      const auto tg = apply_shift(kCfg, g, 0.1 * trial - 0.2, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double rhs = a * tf[i] + b * tg[i];
        CHECK(std::fabs(lhs[i] - rhs) <= 1e-12 * (1 + std::fabs(rhs)));
      }
    }
  }

  TEST_CASE("enforced normalization reproduces constants for either interpretation") {
    for (auto si : {SiKind::kOneMinusU, SiKind::kOneMinusUSquared}) {
      ShiftKernelConfig cfg;
      cfg.si = si;
      cfg.enforce_normalization = true;
      const auto one = RealFunction::constant(1.0);
      for (double y : {-0.6, 0.3, 0.9}) {
        for (double x : {-0.7, 0.0, 0.6}) CHECK(std::fabs(apply_shift(cfg, one, y, x) - 1.0) <= 1e-12);
      }
    }
  }

  TEST_CASE("shift_power examples") {
    std::mt19937 rng(10);
    const auto f = random_smooth(rng);
    const std::vector<double> one_y = {0.3};
    CHECK(shift_power(kCfg, f, one_y, 0.2) == doctest::Approx(apply_shift(kCfg, f, 0.3, 0.2)).epsilon(1e-15));
    const std::vector<double> ones = {1.0, 1.0, 1.0};
    CHECK(std::fabs(shift_power(kCfg, f, ones, -0.45) - f(-0.45)) <= 1e-8);
    const std::vector<double> ys = {0.2, -0.4, 0.7};
    CHECK(std::fabs(shift_power(kCfg, RealFunction::constant(1.0), ys, 0.33) - 1.0) <= 1e-10);
    // Powers of an eigenfunction multiply the multipliers.
    const auto p = eigen_poly(5);
    const double expect = p(0.1) * eval_jacobi(kBasis.multiplier, 5, 0.2) *
                          eval_jacobi(kBasis.multiplier, 5, -0.4) * eval_jacobi(kBasis.multiplier, 5, 0.7);
    CHECK(shift_power(kCfg, p, ys, 0.1) == doctest::Approx(expect).epsilon(1e-10));
  }

  TEST_CASE("generalized_difference examples") {
    std::mt19937 rng(12);
    const auto f = random_smooth(rng);
    CHECK(std::fabs(generalized_difference(kCfg, f, {{0.0}}, 0.4)) <= 1e-8);
    const auto c = RealFunction::constant(2.5);
    for (auto steps : {std::vector<double>{0.7}, std::vector<double>{0.3, -1.1}, std::vector<double>{0.2, 0.5, 0.9}}) {
      CHECK(std::fabs(generalized_difference(kCfg, c, {steps}, -0.3)) <= 1e-10);
      CHECK(std::fabs(difference_via_inclusion_exclusion(kCfg, c, {steps}, -0.3)) <= 1e-10);
    }
    for (int nu : {1, 4, 7}) {
      const auto p = eigen_poly(nu);
      for (double t : {0.1, 0.9, 2.0}) {
        const double expect = p(0.35) * (eval_jacobi(kBasis.multiplier, nu, std::cos(t)) - 1.0);
        CHECK(generalized_difference(kCfg, p, {{t}}, 0.35) == doctest::Approx(expect).epsilon(1e-10));
      }
    }
    CHECK_THROWS_AS(generalized_difference(kCfg, f, {{std::numbers::pi}}, 0.1), DomainError);
  }

  TEST_CASE("inclusion-exclusion matches the recursion for r = 1, 2, 3") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dt(-2.5, 2.5);
    std::uniform_real_distribution<double> dx(-0.9, 0.9);
    for (int r = 1; r <= 3; ++r) {
      for (int trial = 0; trial < 5; ++trial) {
        const auto f = random_smooth(rng);
        DifferenceQuery q;
        for (int j = 0; j < r; ++j) q.steps.push_back(dt(rng));
        const double x = dx(rng);
        const double rec = generalized_difference(kCfg, f, q, x);
        const double ie = difference_via_inclusion_exclusion(kCfg, f, q, x);
        CHECK(std::fabs(rec - ie) <= 1e-9);
        if (r == 1) CHECK(ie == doctest::Approx(apply_shift(kCfg, f, std::cos(q.steps[0]), x) - f(x)).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("differences are symmetric in the steps") {
    std::mt19937 rng(14);
    const auto f = random_smooth(rng);
    std::vector<double> steps = {0.4, -1.3, 2.1};
    const double base = generalized_difference(kCfg, f, {steps}, 0.27);
    std::sort(steps.begin(), steps.end());
    do {
      CHECK(std::fabs(generalized_difference(kCfg, f, {steps}, 0.27) - base) <= 1e-8);
    } while (std::next_permutation(steps.begin(), steps.end()));
  }

  TEST_CASE("DifferenceEvaluator agrees with the free functions and caches") {
    std::mt19937 rng(15);
    const auto f = random_smooth(rng);
    const auto xs = interior_grid(31, 0.99);
    DifferenceEvaluator eval(kCfg, f, xs);
    const std::vector<double> steps = {0.6, 1.4};
    const auto a = eval.difference(steps);
    const auto b = difference_via_inclusion_exclusion(kCfg, f, {steps}, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::fabs(a[i] - b[i]) <= 1e-9);
    const auto cached = eval.cache_size();
    const std::vector<double> swapped = {1.4, 0.6};
    const auto c = eval.difference(swapped);
    CHECK(eval.cache_size() == cached);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(a[i] == c[i]);
  }

  TEST_CASE("boundedness_ratio examples") {
    std::mt19937 rng(16);
    const auto f = random_smooth(rng);
    const SpaceParams params{2.0, 1.0};
    CHECK(boundedness_ratio(kCfg, f, 0.0, params) == doctest::Approx(1.0).epsilon(1e-9));
    const auto one = RealFunction::constant(1.0);
    for (double t : {0.3, 1.0, 2.5}) {
      CHECK(boundedness_ratio(kCfg, one, t, params) == doctest::Approx(co_value(t)).epsilon(1e-11));
    }
    CHECK_THROWS_AS(boundedness_ratio(kCfg, RealFunction::constant(0.0), 0.5, params), DegenerateInputError);

    double max_ratio = 0.0;
    for (double t = -std::numbers::pi + 0.1; t < std::numbers::pi - 0.1; t += 0.05) {
      max_ratio = std::max(max_ratio, boundedness_ratio(kCfg, f, t, params));
    }
    CHECK(std::isfinite(max_ratio));
    CHECK(max_ratio < 10.0);
  }

  TEST_CASE("validate_kernel singles out 1 - u^2") {
    const auto grid = interior_grid(9);
    KernelValidationOptions opt;
    opt.max_degree = 8;
    const auto rep = validate_kernel(kCfg, grid, grid, opt);
    REQUIRE(rep.interpretations.size() == 2);
    CHECK(rep.any_passed);
    CHECK(rep.accepted == SiKind::kOneMinusUSquared);
    for (const auto& interp : rep.interpretations) {
      for (const auto& p : interp.properties) {
        CAPTURE(p.property);
        CAPTURE(p.residual);
        if (interp.si == SiKind::kOneMinusUSquared) CHECK(p.passed);
      }
      if (interp.si == SiKind::kOneMinusU) CHECK_FALSE(interp.normalization_passed);
    }
    const auto resolved = resolve_kernel_config(ShiftKernelConfig{SiKind::kOneMinusU, 128, false, 64});
    CHECK(resolved.si == SiKind::kOneMinusUSquared);
    CHECK_FALSE(resolved.enforce_normalization);
  }
}
