#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "levylab/semigroup.hpp"

using namespace levylab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("LevyExponent accepts [0,1] only", "[semigroup]") {
  CHECK(LevyExponent(0.0).value() == 0.0);
  CHECK(LevyExponent(1.0).value() == 1.0);
  CHECK_THROWS_AS(LevyExponent(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(LevyExponent(1.5), std::invalid_argument);
  CHECK_THROWS_AS(LevyExponent(std::nan("")), std::invalid_argument);
}

TEST_CASE("multiplier examples", "[semigroup]") {
  CHECK_THAT(multiplier(0.0, 1.0, 7.3), WithinRel(std::exp(-1.0), 1e-15));
  CHECK_THAT(multiplier(0.5, 1.0, critical_radius), WithinRel(std::exp(-1.0), 1e-14));
  CHECK_THAT(multiplier(1.0, 2.0, critical_radius), WithinRel(std::exp(-2.0), 1e-14));
  CHECK(multiplier(0.5, 1.0, 0.0) == 1.0);
  CHECK(multiplier(1.0, 1e300, 1e300) == 0.0);
}

TEST_CASE("sigma examples", "[semigroup]") {
  CHECK(sigma(0.0) == 1.0);
  CHECK_THAT(sigma(1.0), WithinRel(1.0 - std::exp(-1.0), 1e-15));
  CHECK_THAT(sigma(1e9), WithinRel(1e-9, 1e-12));
  CHECK(sigma(std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("sigma_prime examples", "[semigroup]") {
  CHECK(sigma_prime(0.0) == -0.5);
  CHECK_THAT(sigma_prime(50.0), WithinRel(-1.0 / 2500.0, 1e-3));
  for (double u : {1e-6, 1e-3, 0.3, 1.0, 10.0, 1e4}) {
    double h = 1e-6 * std::max(u, 1e-3);
    double fd = (sigma(u + h) - sigma(u - h)) / (2 * h);
    CHECK_THAT(sigma_prime(u), WithinAbs(fd, 1e-7));
    CHECK(sigma_prime(u) <= 0.0);
  }
}

TEST_CASE("theta examples and bounds", "[semigroup]") {
  CHECK(theta(0.0) == 0.0);
  CHECK_THAT(theta(1.0), WithinRel(1.0 - 2.0 * std::exp(-1.0), 1e-14));
  double t100 = theta(100.0);
  CHECK(t100 > 1.0 / 200.0);
  CHECK(t100 <= 1.0 / 100.0);
  CHECK_THAT(theta(1e-8), WithinRel(0.5e-8, 1e-7));
}

TEST_CASE("k_factor examples", "[semigroup]") {
  CHECK_THAT(k_factor(0.3, critical_radius), WithinAbs(0.0, 1e-15));
  CHECK_THAT(k_factor(0.5, std::exp(1.0) / two_pi), WithinRel(2.0 * std::exp(1.0), 1e-14));
  CHECK_THROWS(k_factor(0.5, 0.0));
}
