#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gshift/error.hpp"
#include "gshift/weight.hpp"

using namespace gshift;

TEST_SUITE("weighted_space") {
  TEST_CASE("weight_value examples") {
    for (auto k : {SiKind::kOneMinusU, SiKind::kOneMinusUSquared}) {
      CHECK(weight_value(k, 0.0) == 1.0);
      CHECK(weight_value(k, 1.0) == 0.0);
      for (double u = -0.99; u < 1.0; u += 0.01) CHECK(weight_value(k, u) > 0.0);
    }
    CHECK(weight_value(SiKind::kOneMinusU, -1.0) == 2.0);
    CHECK(weight_value(SiKind::kOneMinusUSquared, -1.0) == 0.0);
    CHECK_THROWS_AS(weight_value(SiKind::kOneMinusU, 1.5), DomainError);
    CHECK_THROWS_AS(weight_value(SiKind::kOneMinusUSquared, -1.0001), DomainError);
  }

  TEST_CASE("co_value examples") {
    CHECK(co_value(0.0) == 1.0);
    CHECK(co_value(std::numbers::pi) == doctest::Approx(0.0));
    CHECK(co_value(std::numbers::pi / 2) == doctest::Approx(0.25).epsilon(1e-15));
    for (double t = -3.0; t <= 3.0; t += 0.25) {
      CHECK(co_value(t) == doctest::Approx(std::pow(std::cos(t / 2), 4)).epsilon(1e-13));
    }
  }

  TEST_CASE("weighted_norm examples") {
    const auto zero = RealFunction::constant(0.0);
    const auto one = RealFunction::constant(1.0);
    CHECK(weighted_norm(zero, 2.0, {SiKind::kOneMinusUSquared, 1.0}) == 0.0);
    CHECK(weighted_norm(zero, kInf, {SiKind::kOneMinusUSquared, 1.0}) == 0.0);
    CHECK(weighted_norm(one, 2.0, {SiKind::kOneMinusUSquared, 0.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    // max of 1 - x^2 is attained at the middle grid point x = 0
    CHECK(weighted_norm(one, kInf, {SiKind::kOneMinusUSquared, 1.0}) == 1.0);
    // int (1-x^2)^2 dx = 16/15
    CHECK(weighted_norm(one, 2.0, {SiKind::kOneMinusUSquared, 1.0}) ==
          doctest::Approx(std::sqrt(16.0 / 15.0)).epsilon(1e-14));
    // int |x| dx = 1 in L1
    const auto absx = RealFunction::from_scalar("abs", [](double x) { return std::fabs(x); });
    CHECK(weighted_norm(absx, 1.0, {SiKind::kOneMinusUSquared, 0.0}) == doctest::Approx(1.0).epsilon(1e-5));
  }

  TEST_CASE("weighted_norm: non-finite integrand is reported") {
    const auto bad = RealFunction::from_scalar("bad", [](double x) { return 1.0 / (x - 0.1); });
    const auto inf_at = RealFunction::from_scalar("inf", [](double x) { return x == 0.0 ? INFINITY : 1.0; });
    CHECK_THROWS_AS(weighted_norm(inf_at, kInf, {SiKind::kOneMinusUSquared, 0.0}), EvaluationError);
    CHECK_NOTHROW(weighted_norm(bad, 2.0, {SiKind::kOneMinusUSquared, 0.0}));
  }

  TEST_CASE("homogeneity and triangle inequality on random smooth functions") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
      const double a = d(rng), b = d(rng), c = d(rng), s = d(rng);
      const auto f = RealFunction::from_scalar("f", [=](double x) { return std::sin(a * x + b) + c * x * x; });
      const auto g = RealFunction::from_scalar("g", [=](double x) { return std::exp(s * x) - a; });
      for (double p : {1.0, 1.5, 2.0, 4.0, kInf}) {
        for (double alpha : {0.0, 0.8, 1.25}) {
          const WeightSpec w{SiKind::kOneMinusUSquared, alpha};
          const double nf = weighted_norm(f, p, w);
          CHECK(weighted_norm(scaled(c, f), p, w) == doctest::Approx(std::fabs(c) * nf).epsilon(1e-12));
          const double nsum = weighted_norm(linear_combination(1.0, f, 1.0, g), p, w);
          CHECK(nsum <= nf + weighted_norm(g, p, w) + 1e-10);
        }
      }
    }
  }

  TEST_CASE("doubling the sup grid never loses more than 1e-8") {
    const auto f = RealFunction::from_scalar("k", [](double x) { return std::fabs(x - 0.3) + 0.5 * x; });
    for (double alpha : {0.0, 1.0}) {
      const WeightSpec w{SiKind::kOneMinusUSquared, alpha};
      NormConfig coarse{256, 4097, 0.0};
      NormConfig fine{256, 8193, 0.0};
      CHECK(weighted_norm(f, kInf, w, fine) >= weighted_norm(f, kInf, w, coarse) - 1e-8);
    }
  }

  TEST_CASE("validate_parameters tables") {
    CHECK(validate_parameters({2.0, 1.0}, Theorem::kJackson).admissible);
    CHECK_FALSE(validate_parameters({1.0, 0.5}, Theorem::kJackson).admissible);
    CHECK(validate_parameters({1.0, 1.0}, Theorem::kJackson).admissible);
    CHECK_FALSE(validate_parameters({1.0, 1.1}, Theorem::kJackson).admissible);
    CHECK(validate_parameters({kInf, 1.0}, Theorem::kJackson).admissible);
    CHECK_FALSE(validate_parameters({kInf, 1.5}, Theorem::kJackson).admissible);
    CHECK_FALSE(validate_parameters({kInf, 0.99}, Theorem::kJackson).admissible);
    CHECK_FALSE(validate_parameters({2.0, 0.75}, Theorem::kJackson).admissible);
    CHECK_FALSE(validate_parameters({2.0, 1.25}, Theorem::kJackson).admissible);

    CHECK_FALSE(validate_parameters({2.0, 1.0}, Theorem::kDirect, 1, 2.0).admissible);
    CHECK(validate_parameters({2.0, 1.0}, Theorem::kDirect, 1, 1.9).admissible);
    CHECK(validate_parameters({2.0, 1.0}, Theorem::kCoincidence, 2, 3.5).admissible);
    CHECK_FALSE(validate_parameters({2.0, 1.0}, Theorem::kCoincidence, 2, 0.0).admissible);
    // p = 1 in the embedding theorems uses the 1 - 1/(2p) < alpha < 3/2 - 1/(2p) row
    CHECK(validate_parameters({1.0, 0.75}, Theorem::kDirect, 1, 1.0).admissible);
    CHECK_FALSE(validate_parameters({1.0, 0.5}, Theorem::kDirect, 1, 1.0).admissible);
    CHECK(validate_parameters({kInf, 1.0}, Theorem::kInverse, 1, 10.0).admissible);
    CHECK_FALSE(validate_parameters({kInf, 1.0}, Theorem::kInverse, 1, 0.0).admissible);
    CHECK_FALSE(validate_parameters({0.5, 1.0}, Theorem::kInverse, 1, 1.0).admissible);
  }
}
