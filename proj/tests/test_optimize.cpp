#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "levylab/optimize.hpp"

using namespace levylab;
using Catch::Matchers::WithinAbs;

TEST_CASE("scan of a constant functional", "[optimize]") {
  CurveFunctional c{[](double) { return 0.5; }, [](double) { return 0.0; }, "const"};
  auto curve = scan(c, 0.0, 1.0, 17);
  CHECK(curve.grid.size() == 17);
  CHECK(curve.failures.empty());
  CHECK(!curve.strictly_increasing());
  CHECK(!curve.strictly_decreasing());
  for (double d : curve.derivatives) CHECK(d == 0.0);
  auto rep = find_extremum(c, ExtremumKind::min, 0.0, 1.0);
  CHECK(rep.trend == CurveTrend::none);
  CHECK(rep.classification != ExtremumClass::interior);
}

TEST_CASE("scan records failures per index", "[optimize]") {
  CurveFunctional c{[](double s) {
                      if (s > 0.9) throw std::runtime_error("boom");
                      return s;
                    },
                    {},
                    ""};
  auto curve = scan(c, 0.0, 1.0, 11);
  REQUIRE(curve.failures.size() == 1);
  CHECK(curve.failures[0].first == 10);
  CHECK(std::isnan(curve.values[10]));
  CHECK_THROWS(scan(c, 0.5, 0.2, 11));
}

TEST_CASE("interior extremum by derivative bracketing", "[optimize]") {
  CurveFunctional c{[](double s) { return (s - 0.37) * (s - 0.37); }, [](double s) { return 2.0 * (s - 0.37); }, ""};
  auto rep = find_extremum(c, ExtremumKind::min, 0.0, 1.0, 1e-9);
  CHECK(rep.classification == ExtremumClass::interior);
  CHECK_THAT(rep.location, WithinAbs(0.37, 1e-8));
  CHECK(rep.converged);
  CHECK(rep.bracket_hi - rep.bracket_lo <= 1e-9);
  auto mx = find_extremum(c, ExtremumKind::max, 0.0, 1.0);
  CHECK(mx.classification == ExtremumClass::boundary_at_1);
}

TEST_CASE("golden-section path without derivative", "[optimize]") {
  CurveFunctional c{[](double s) { return -std::cos(3.0 * (s - 0.6)); }, {}, ""};
  auto rep = find_extremum(c, ExtremumKind::min, 0.0, 1.0, 1e-7);
  CHECK(rep.classification == ExtremumClass::interior);
  CHECK_THAT(rep.location, WithinAbs(0.6, 1e-6));
}

TEST_CASE("monotone curves give boundary reports", "[optimize]") {
  CurveFunctional c{[](double s) { return std::exp(s); }, [](double s) { return std::exp(s); }, ""};
  auto mx = find_extremum(c, ExtremumKind::max, 0.0, 1.0);
  CHECK(mx.classification == ExtremumClass::boundary_at_1);
  CHECK(mx.trend == CurveTrend::monotone_increasing);
  auto mn = find_extremum(c, ExtremumKind::min, 0.0, 1.0);
  CHECK(mn.classification == ExtremumClass::boundary_at_0);
}

TEST_CASE("unreachable tolerance reports the achieved bracket", "[optimize]") {
  CurveFunctional c{[](double s) { return (s - 0.37) * (s - 0.37); }, [](double s) { return 2.0 * (s - 0.37); }, ""};
  auto rep = find_extremum(c, ExtremumKind::min, 0.0, 1.0, 1e-300);
  CHECK(!rep.converged);
  CHECK(rep.bracket_lo <= 0.37);
  CHECK(rep.bracket_hi >= 0.37);
}

TEST_CASE("minimizer drift", "[optimize]") {
  auto base = DomainShape::interval(-1.0, 1.0);
  CHECK(minimizer_drift(base, 0.01, {}).empty());
  CHECK_THROWS(minimizer_drift(base, 0.01, {1e6, 1e4}));
  auto drift = minimizer_drift(base, 0.01, {1e4, 1e6, 1e8});
  REQUIRE(drift.size() == 3);
  for (std::size_t i = 1; i < drift.size(); ++i) CHECK(drift[i].location <= drift[i - 1].location);
  for (const auto& d : drift) {
    double dense = dense_grid_minimizer([&](double s) { return eval_scaled(base, 0.01, s, d.T).value; });
    CHECK_THAT(d.location, WithinAbs(dense, 2.0 / 512));
  }
}

TEST_CASE("minimizer sits above 1/2 for a very small dilation", "[optimize]") {
  auto base = DomainShape::interval(-1.0, 1.0);
  auto drift = minimizer_drift(base, 1e-16, {1e4, 1e6, 1e8});
  for (std::size_t i = 0; i < drift.size(); ++i) {
    CHECK(drift[i].location >= 0.5);
    CHECK(drift[i].location <= 0.75);
    if (i) CHECK(drift[i].location <= drift[i - 1].location);
  }
}
