#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "levylab/error.hpp"
#include "levylab/quadrature.hpp"
#include "levylab/spectra.hpp"

using namespace levylab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

QuadratureConfig sinc2_config(int log_power) {
  QuadratureConfig c;
  c.rel_tol = 1e-12;
  OscillatoryTail t;
  t.omega = 2.0;
  t.mean = [log_power](double x) { return std::pow(std::log(x), log_power) / (2.0 * x * x); };
  t.cos_amplitude = [log_power](double x) { return -std::pow(std::log(x), log_power) / (2.0 * x * x); };
  c.oscillatory_tail = t;
  c.power_head = PowerHead{1.0, 0.0, log_power, 1.0};
  return c;
}

}  // namespace

TEST_CASE("halfline: sin^2/x^2", "[quadrature]") {
  auto f = [](double x) { return x == 0.0 ? 1.0 : std::pow(std::sin(x) / x, 2); };
  auto r = integrate_halfline(f, sinc2_config(0));
  CHECK_THAT(r.value, WithinRel(std::numbers::pi / 2, 1e-11));
  CHECK(r.converged);
}

TEST_CASE("halfline: exp(-x)", "[quadrature]") {
  QuadratureConfig c;
  c.envelope = TailEnvelope{1.5, 3.0};  // x^3 e^{-x} <= 27 e^{-3}
  auto r = integrate_halfline([](double x) { return std::exp(-x); }, c);
  CHECK_THAT(r.value, WithinRel(1.0, 1e-11));
}

TEST_CASE("halfline: log-weighted sin^2/x^2", "[quadrature]") {
  auto f = [](double x) { return x == 0.0 ? 0.0 : std::pow(std::sin(x) / x, 2) * std::log(x); };
  auto r = integrate_halfline(f, sinc2_config(1));
  double exact = std::numbers::pi / 2 * (1.0 - std::numbers::egamma - std::log(2.0));
  CHECK_THAT(r.value, WithinRel(exact, 1e-10));
  CHECK_THAT(exact, WithinAbs(-0.4246850, 1e-7));
}

TEST_CASE("radial integrals", "[quadrature]") {
  QuadratureConfig c;
  c.envelope = TailEnvelope{1.5, 3.0};
  CHECK_THAT(integrate_radial(1, [](double r) { return std::exp(-r); }, c).value, WithinRel(2.0, 1e-11));
  c.envelope = TailEnvelope{1.0, 5.0};  // r^5 e^{-r^2} < 1
  CHECK_THAT(integrate_radial(3, [](double r) { return std::exp(-r * r); }, c).value,
             WithinRel(std::pow(std::numbers::pi, 1.5), 1e-11));
}

TEST_CASE("radial integral of the 2D disc density gives 1/pi", "[quadrature]") {
  auto d = uniform_prey(DomainShape::ball(2, 1.0));
  QuadratureConfig c;
  c.rel_tol = 1e-10;
  OscillatoryTail t{d.tail->omega, d.tail->mean, d.tail->cos_amplitude, d.tail->sin_amplitude};
  c.oscillatory_tail = t;
  CHECK_THAT(integrate_radial(2, d.radial, c).value, WithinRel(1.0 / std::numbers::pi, 1e-8));
}

TEST_CASE("finite segment with graded head", "[quadrature]") {
  QuadratureConfig c;
  c.power_head = PowerHead{1.0, -0.5, 0, 1.0};
  auto r = integrate_segment([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 4.0, c);
  CHECK_THAT(r.value, WithinRel(4.0, 1e-11));
  auto plain = integrate_segment([](double x) { return std::cos(x); }, 1.0, 2.0);
  CHECK_THAT(plain.value, WithinRel(std::sin(2.0) - std::sin(1.0), 1e-13));
}

TEST_CASE("power head integral", "[quadrature]") {
  // int_0^e x^{-1/2} ln x = 2 e^{1/2} (ln e - 2)
  double e = 0.3;
  double exact = 2.0 * std::sqrt(e) * (std::log(e) - 2.0);
  CHECK_THAT(power_head_integral(PowerHead{1.0, -0.5, 1, 1.0}, e), WithinRel(exact, 1e-14));
  CHECK_THROWS(power_head_integral(PowerHead{1.0, -1.0, 0, 1.0}, e));
}

TEST_CASE("envelope tail bound shrinks with the cut", "[quadrature]") {
  auto f = [](double x) { return 1.0 / std::pow(1.0 + x, 3); };
  double prev = 1e300;
  for (double cut : {10.0, 100.0, 1000.0}) {
    QuadratureConfig c;
    c.tail_cut = cut;
    c.envelope = TailEnvelope{1.0, 3.0};
    auto r = integrate_halfline(f, c);
    CHECK(r.tail_bound < prev);
    CHECK_THAT(r.value, WithinAbs(0.5, 2.0 * r.tail_bound + 1e-12));
    prev = r.tail_bound;
  }
}

TEST_CASE("invalid envelope is rejected", "[quadrature]") {
  QuadratureConfig c;
  c.envelope = TailEnvelope{1.0, 1.0};
  CHECK_THROWS_AS(integrate_halfline([](double x) { return std::exp(-x); }, c), std::invalid_argument);
}

TEST_CASE("non-convergence carries the best estimate", "[quadrature]") {
  QuadratureConfig c;
  c.max_panels = 16;
  c.rel_tol = 1e-15;
  c.abs_tol = 1e-300;
  auto wild = [](double x) { return std::sin(1.0 / (x + 1e-3)); };
  try {
    integrate_segment(wild, 0.1, 1.0, c);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(std::isfinite(e.best_value()));
    CHECK(e.best_error() > 0.0);
  }
}
