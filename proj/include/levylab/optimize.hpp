#pragma once

// Scans and extremum search over the Levy exponent s.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "levylab/calculus.hpp"
#include "levylab/parallel.hpp"

namespace levylab {

/// A curve s -> F(s) with an optional analytic derivative.
struct CurveFunctional {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::string provenance;
};

struct EfficiencyCurve {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> derivatives;  // empty when the functional has none
  std::vector<std::pair<std::size_t, std::string>> failures;
  std::string provenance;

  bool strictly_increasing() const {
    for (std::size_t i = 1; i < values.size(); ++i)
      if (!(values[i] > values[i - 1])) return false;
    return !values.empty();
  }
  bool strictly_decreasing() const {
    for (std::size_t i = 1; i < values.size(); ++i)
      if (!(values[i] < values[i - 1])) return false;
    return !values.empty();
  }
};

enum class ExtremumKind { max, min };
enum class ExtremumClass { interior, boundary_at_0, boundary_at_1 };
enum class CurveTrend { none, monotone_increasing, monotone_decreasing };

inline const char* to_string(ExtremumKind k) { return k == ExtremumKind::max ? "max" : "min"; }
inline const char* to_string(ExtremumClass c) {
  switch (c) {
    case ExtremumClass::interior: return "interior";
    case ExtremumClass::boundary_at_0: return "boundary-at-0";
    default: return "boundary-at-1";
  }
}
inline const char* to_string(CurveTrend t) {
  switch (t) {
    case CurveTrend::monotone_increasing: return "monotone-increasing";
    case CurveTrend::monotone_decreasing: return "monotone-decreasing";
    default: return "none";
  }
}

struct ExtremumReport {
  ExtremumKind kind = ExtremumKind::min;
  double location = 0.0;
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  ExtremumClass classification = ExtremumClass::interior;
  CurveTrend trend = CurveTrend::none;
  int iterations = 0;
  bool converged = true;
};

/// Samples F (and F') on `points` uniform nodes of [s_lo, s_hi]. Failures are
/// recorded per index with NaN in the value slot.
inline EfficiencyCurve scan(const CurveFunctional& f, double s_lo, double s_hi, int points) {
  if (!(s_lo >= 0.0 && s_lo < s_hi && s_hi <= 1.0)) throw std::invalid_argument("scan needs 0 <= s_lo < s_hi <= 1");
  if (points < 8) throw std::invalid_argument("scan needs at least 8 points");
  if (!f.value) throw std::invalid_argument("scan needs a value functional");
  EfficiencyCurve c;
  c.provenance = f.provenance;
  std::size_t n = static_cast<std::size_t>(points);
  c.grid.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.grid[i] = s_lo + (s_hi - s_lo) * double(i) / double(n - 1);
  c.grid.back() = s_hi;
  c.values.assign(n, std::numeric_limits<double>::quiet_NaN());
  if (f.derivative) c.derivatives.assign(n, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> errors(n);
  parallel_for(n, [&](std::size_t i) {
    try {
      c.values[i] = f.value(c.grid[i]);
      if (f.derivative) c.derivatives[i] = f.derivative(c.grid[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
      if (errors[i].empty()) errors[i] = "evaluation failed";
    }
  });
  for (std::size_t i = 0; i < n; ++i)
    if (!errors[i].empty()) c.failures.emplace_back(i, errors[i]);
  return c;
}

namespace detail {

inline double safe_eval(const std::function<double(double)>& f, double s, double fallback) {
  try {
    return f(s);
  } catch (const std::exception&) {
    return f(fallback);
  }
}

}  // namespace detail

/// Locates the max or min of F on [s_lo, s_hi]. With a derivative: sign-change
/// bracketing on a coarse grid, then bisection on the sign. Without: golden
/// section around the best grid node. No sign change gives an endpoint.
inline ExtremumReport find_extremum(const CurveFunctional& f, ExtremumKind kind, double s_lo, double s_hi,
                                    double tol = 1e-6, int grid_points = 33) {
  if (!(s_lo >= 0.0 && s_lo < s_hi && s_hi <= 1.0))
    throw std::invalid_argument("extremum search needs 0 <= s_lo < s_hi <= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (grid_points < 3) throw std::invalid_argument("need at least 3 grid points");
  ExtremumReport rep;
  rep.kind = kind;
  const bool maximize = kind == ExtremumKind::max;
  const double span = s_hi - s_lo;
  const double inset = 1e-6 * span;
  auto better = [maximize](double a, double b) { return maximize ? a > b : a < b; };

  std::size_t n = static_cast<std::size_t>(grid_points);
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = s_lo + span * double(i) / double(n - 1);
  std::vector<double> inner = grid;
  inner.front() += inset;
  inner.back() -= inset;

  double v_lo = detail::safe_eval(f.value, s_lo, s_lo + inset);
  double v_hi = detail::safe_eval(f.value, s_hi, s_hi - inset);

  if (f.derivative) {
    std::vector<double> d(n);
    parallel_for(n, [&](std::size_t i) { d[i] = f.derivative(inner[i]); });
    bool all_pos = std::all_of(d.begin(), d.end(), [](double x) { return x > 0.0; });
    bool all_neg = std::all_of(d.begin(), d.end(), [](double x) { return x < 0.0; });
    rep.trend = all_pos ? CurveTrend::monotone_increasing : (all_neg ? CurveTrend::monotone_decreasing : CurveTrend::none);
    // an interior max has F' going + to -, a min - to +
    std::optional<std::pair<double, double>> chosen;
    double chosen_value = 0.0;
    int iters = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      bool flip = maximize ? (d[i] > 0.0 && d[i + 1] <= 0.0) : (d[i] < 0.0 && d[i + 1] >= 0.0);
      if (!flip) continue;
      double a = inner[i], b = inner[i + 1];
      int it = 0;
      while (b - a > tol && it < 200) {
        double m = 0.5 * (a + b);
        double dm = f.derivative(m);
        bool left_side = maximize ? dm > 0.0 : dm < 0.0;
        if (left_side)
          a = m;
        else
          b = m;
        ++it;
      }
      double loc = 0.5 * (a + b);
      double val = f.value(loc);
      if (!chosen || better(val, chosen_value)) {
        chosen = std::make_pair(a, b);
        chosen_value = val;
        iters = it;
        rep.converged = (b - a) <= tol;
      }
    }
    if (chosen) {
      double loc = 0.5 * (chosen->first + chosen->second);
      bool beats_ends = !better(v_lo, chosen_value) && !better(v_hi, chosen_value);
      if (beats_ends) {
        rep.location = loc;
        rep.value = chosen_value;
        rep.bracket_lo = chosen->first;
        rep.bracket_hi = chosen->second;
        rep.classification = ExtremumClass::interior;
        rep.iterations = iters;
        return rep;
      }
    }
  } else {
    std::vector<double> v(n);
    parallel_for(n, [&](std::size_t i) { v[i] = f.value(inner[i]); });
    v.front() = v_lo;
    v.back() = v_hi;
    std::size_t idx = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (better(v[i], v[idx])) idx = i;
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < n; ++i) {
      inc = inc && v[i] > v[i - 1];
      dec = dec && v[i] < v[i - 1];
    }
    rep.trend = inc ? CurveTrend::monotone_increasing : (dec ? CurveTrend::monotone_decreasing : CurveTrend::none);
    if (idx > 0 && idx + 1 < n) {
      double a = grid[idx - 1], b = grid[idx + 1];
      const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
      double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
      double fc = f.value(c), fd = f.value(d);
      int it = 0;
      while (b - a > tol && it < 200) {
        if (better(fc, fd)) {
          b = d;
          d = c;
          fd = fc;
          c = b - inv_phi * (b - a);
          fc = f.value(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + inv_phi * (b - a);
          fd = f.value(d);
        }
        ++it;
      }
      rep.location = 0.5 * (a + b);
      rep.value = f.value(rep.location);
      rep.bracket_lo = a;
      rep.bracket_hi = b;
      rep.classification = ExtremumClass::interior;
      rep.iterations = it;
      rep.converged = (b - a) <= tol;
      return rep;
    }
  }
  bool low_wins = better(v_lo, v_hi) || v_lo == v_hi;
  rep.location = low_wins ? s_lo : s_hi;
  rep.value = low_wins ? v_lo : v_hi;
  rep.bracket_lo = rep.bracket_hi = rep.location;
  rep.classification = low_wins ? ExtremumClass::boundary_at_0 : ExtremumClass::boundary_at_1;
  return rep;
}

/// J^{Omega_r}(., T) with its analytic derivative, for an interval base.
inline CurveFunctional scaled_curve(const DomainShape& base, double r, double T,
                                    const QuadratureConfig& cfg = functional_defaults()) {
  CurveFunctional c;
  c.value = [=](double s) { return eval_scaled(base, r, s, T, cfg).value; };
  c.derivative = [=](double s) { return deriv_s_scaled(base, r, s, T, cfg); };
  c.provenance = "scaled " + base.describe() + " r=" + std::to_string(r) + " T=" + std::to_string(T);
  return c;
}

/// Unnormalised efficiency of a spectral density with its analytic derivative.
inline CurveFunctional unnormalized_curve(const SpectralDensity& d, double T,
                                          const QuadratureConfig& cfg = functional_defaults()) {
  CurveFunctional c;
  c.value = [=](double s) { return eval_efficiency(EfficiencyQuery{d, s, T, false, cfg}).value; };
  c.derivative = [=](double s) { return deriv_s_unnormalized(d, s, T, cfg).value; };
  c.provenance = "unnormalized " + d.label + " T=" + std::to_string(T);
  return c;
}

struct DriftPoint {
  double T = 0.0;
  double location = 0.0;
  ExtremumReport report;
};

/// Minimizer of J^{Omega_r}(., T) on [0, 1] for each T.
inline std::vector<DriftPoint> minimizer_drift(const DomainShape& base, double r, const std::vector<double>& T_list,
                                               double tol = 1e-6) {
  for (std::size_t i = 1; i < T_list.size(); ++i)
    if (!(T_list[i] > T_list[i - 1])) throw std::invalid_argument("T list must be increasing");
  std::vector<DriftPoint> out;
  for (double T : T_list) {
    ExtremumReport rep = find_extremum(scaled_curve(base, r, T), ExtremumKind::min, 0.0, 1.0, tol);
    out.push_back({T, rep.location, rep});
  }
  return out;
}

/// Minimizer by brute force over `points` uniform nodes of (0, 1].
inline double dense_grid_minimizer(const std::function<double(double)>& f, int points = 512) {
  std::vector<double> v(static_cast<std::size_t>(points));
  parallel_for(v.size(), [&](std::size_t i) { v[i] = f(double(i + 1) / points); });
  std::size_t idx = std::min_element(v.begin(), v.end()) - v.begin();
  return double(idx + 1) / points;
}

}  // namespace levylab
