#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "levylab/functionals.hpp"
#include "levylab/oracle.hpp"

using namespace levylab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double v_star = 0.323893281719456;  // J(s=1/2, T=1), uniform prey on (-1,1)
}

TEST_CASE("efficiency golden value", "[functionals]") {
  auto r = eval_efficiency(DomainShape::interval(-1.0, 1.0), 0.5, 1.0);
  CHECK_THAT(r.value, WithinRel(v_star, 1e-12));
  CHECK(r.error_estimate < 1e-12);
}

TEST_CASE("efficiency tends to 1/|Omega| as T -> 0", "[functionals]") {
  for (double s : {0.1, 0.5, 0.9})
    CHECK_THAT(eval_efficiency(DomainShape::interval(-1.0, 1.0), s, 1e-12).value, WithinRel(0.5, 1e-5));
}

TEST_CASE("s = 0 reduces to mass times sigma(T)", "[functionals]") {
  auto shape = DomainShape::interval(-1.0, 1.0);
  CHECK_THAT(eval_efficiency(shape, 0.0, 2.0).value, WithinRel(0.5 * sigma(2.0), 1e-12));
}

TEST_CASE("efficiency rejects bad parameters", "[functionals]") {
  auto shape = DomainShape::interval(-1.0, 1.0);
  CHECK_THROWS(eval_efficiency(shape, 1.2, 1.0));
  CHECK_THROWS(eval_efficiency(shape, 0.5, 0.0));
  CHECK_THROWS(eval_efficiency(shape, 0.5, -1.0));
}

TEST_CASE("stationary overlap", "[functionals]") {
  auto I = [](double a, double b) { return DomainShape::interval(a, b); };
  CHECK_THAT(stationary_overlap(I(-1, 1), I(-1, 1)), WithinRel(0.5, 1e-15));
  CHECK(stationary_overlap(I(0, 1), I(2, 3)) == 0.0);
  CHECK_THAT(stationary_overlap(I(0, 1), I(-1, 1)), WithinRel(0.5, 1e-15));
  auto b = DomainShape::ball(3, 1.0);
  CHECK_THAT(stationary_overlap(b, b), WithinRel(1.0 / b.measure(), 1e-15));
  CHECK_THROWS(stationary_overlap(I(0, 1), b));
}

TEST_CASE("scaled route", "[functionals]") {
  auto base = DomainShape::interval(-1.0, 1.0);
  CHECK_THAT(eval_scaled(base, 1.0, 0.4, 3.0).value, WithinRel(eval_efficiency(base, 0.4, 3.0).value, 1e-11));
  CHECK_THAT(eval_scaled(base, 2.0, 0.5, 1.0).value, WithinRel(0.5 * eval_efficiency(base, 0.5, 0.5).value, 1e-11));
  for (double r : {0.01, 0.3, 7.0})
    CHECK_THAT(eval_scaled(base, r, 0.6, 2.0).value,
               WithinRel(eval_efficiency(base.with_dilation(r), 0.6, 2.0).value, 1e-10));
}

TEST_CASE("L surface", "[functionals]") {
  auto series = [](double r) {
    std::vector<double> v;
    for (int k = 1; k <= 9; ++k) v.push_back(eval_L_surface(k / 10.0, r).value);
    return v;
  };
  auto at0 = series(0.0);
  for (std::size_t i = 1; i < at0.size(); ++i) CHECK(at0[i] > at0[i - 1]);
  auto at_crit = series(3.0 / (2.0 * pi));
  for (std::size_t i = 1; i < at_crit.size(); ++i) CHECK(at_crit[i] < at_crit[i - 1]);
  CHECK(eval_L_surface(0.1, 5.0).value > eval_L_surface(0.9, 5.0).value);
  CHECK_THROWS_AS(eval_L_surface(0.0, 1.0), DomainError);
}

TEST_CASE("long-time functional", "[functionals]") {
  double w = eval_J_infty(1.0, 1.0, 0.25).value;
  CHECK_THAT(eval_J_infty(2.0, 1.0, 0.25).value, WithinRel(std::pow(2.0, 1.5) * w, 1e-11));
  CHECK_THAT(w, WithinRel(3.0090111122547, 1e-11));
  CHECK_THAT(w, WithinRel(spectral_moment_oracle(1.0, 0.25, 0), 1e-9));
  CHECK_THROWS_AS(eval_J_infty(1.0, 1.0, 0.6), DomainError);
  CHECK_THROWS_AS(eval_J_infty(1.0, 1.0, 0.5), DomainError);
}

TEST_CASE("long-time limit of T J", "[functionals]") {
  auto base = DomainShape::interval(-1.0, 1.0);
  double jinf = eval_J_infty(1.0, 1.0, 0.25).value;
  double prev = 1e300;
  for (double T : {1e4, 1e5, 1e6}) {
    double gap = std::abs(T * 4.0 * eval_efficiency(base, 0.25, T).value / jinf - 1.0);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("g, g', f signs and limits", "[functionals]") {
  CHECK_THAT(g_of_s(0.0), WithinRel(2.0, 1e-12));
  for (double s : {0.0, 0.1, 0.3, 0.45}) {
    CHECK(g_of_s(s) > 0.0);
    CHECK(g_prime(s) > 0.0);
    CHECK(f_ratio(s) < 0.0);
  }
  CHECK(f_ratio(0.499) < f_ratio(0.45));
  CHECK(f_ratio(0.45) < f_ratio(0.4));
  CHECK_THROWS_AS(g_of_s(0.5), DomainError);
}

TEST_CASE("g'(0) equals 4(gamma + ln 2 - 1)", "[functionals]") {
  // the closed form obtained by integrating the log-weighted sinc square exactly
  double exact = 4.0 * (std::numbers::egamma + std::log(2.0) - 1.0);
  CHECK_THAT(g_prime(0.0), WithinRel(exact, 1e-10));
  CHECK_THAT(f_ratio(0.0), WithinRel(1.0 - std::numbers::egamma - std::log(2.0), 1e-10));
}
