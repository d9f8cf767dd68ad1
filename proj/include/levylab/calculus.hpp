#pragma once

// Analytic s-derivatives, the support classifier and the long-time thresholds.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "levylab/functionals.hpp"

namespace levylab {

struct DerivativeBreakdown {
  double total = 0.0;
  double head = 0.0;  // |xi| < r / (2 pi)
  double tail = 0.0;  // complement
  double error_estimate = 0.0;
};

/// d/ds of the unnormalised functional: int -2 T ln(w) theta(T w^{2s}) |p^|^2.
inline IntegralResult deriv_s_unnormalized(const SpectralDensity& d, double s, double T,
                                           const QuadratureConfig& cfg = functional_defaults()) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("derivative needs s in (0, 1), got " + std::to_string(s));
  detail::check_time(T);
  auto weight = [s, T](double rho) {
    double w = two_pi * rho;
    return -2.0 * T * std::log(w) * theta(multiplier_arg(s, T, rho));
  };
  QuadratureConfig c = cfg;
  if (!c.head_cut) c.head_cut = detail::graded_head_cut(s, T);
  return detail::integrate_weighted(d, weight, c, std::nullopt, {critical_radius});
}

/// d/ds g(s,r,T) = 2 int theta(T r^{-2s} w^{2s}) ln(r / w) |chi^_Omega|^2, split at |xi| = r/(2 pi).
inline DerivativeBreakdown deriv_s_g(const DomainShape& base, double r, double s, double T,
                                     const QuadratureConfig& cfg = functional_defaults()) {
  if (base.kind() != DomainShape::Kind::interval) throw std::invalid_argument("deriv_s_g expects an interval");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("derivative needs s in (0, 1), got " + std::to_string(s));
  detail::check_time(T);
  if (!(r > 0.0)) throw std::invalid_argument("dilation r must be positive");
  SpectralDensity d = indicator_density(base);
  double split = r / two_pi;
  auto integrand = [s, T, r](double rho) {
    return theta(multiplier_arg(s, T, rho, r)) * std::log(r / (two_pi * rho));
  };
  auto tail_w = [&](double rho) { return rho >= split ? integrand(rho) : 0.0; };
  QuadratureConfig c = cfg;
  double t_eff = std::exp(std::log(T) - 2.0 * s * std::log(r));
  if (!c.head_cut) c.head_cut = detail::graded_head_cut(s, t_eff);
  SpectralDensity head_d = d;
  head_d.segments = {{0.0, split}};
  head_d.tail.reset();
  IntegralResult h = detail::integrate_weighted(head_d, integrand, c);
  IntegralResult t = detail::integrate_weighted(d, tail_w, c, std::nullopt, {split});
  DerivativeBreakdown out;
  out.head = h.value;
  out.tail = t.value;
  out.total = 2.0 * (h.value + t.value);
  out.error_estimate = 2.0 * (h.error_estimate + t.error_estimate);
  return out;
}

/// d/ds of eval_scaled: deriv_s_g total / (r^n |Omega|^2).
inline double deriv_s_scaled(const DomainShape& base, double r, double s, double T,
                             const QuadratureConfig& cfg = functional_defaults()) {
  DomainShape b = base.with_dilation(1.0);
  double m = b.base_measure();
  return deriv_s_g(b, r, s, T, cfg).total / (std::pow(r, b.dim()) * m * m);
}

enum class Monotonicity { increasing, decreasing, indeterminate };

inline const char* to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::increasing: return "increasing";
    case Monotonicity::decreasing: return "decreasing";
    default: return "indeterminate";
  }
}

/// Support inside the critical ball: increasing in s; outside: decreasing.
inline Monotonicity classify_support(const SpectralDensity& d) {
  if (d.support.kind == SupportKind::all) return Monotonicity::indeterminate;
  if (d.support.outer <= critical_radius) return Monotonicity::increasing;
  if (d.support.inner >= critical_radius) return Monotonicity::decreasing;
  return Monotonicity::indeterminate;
}

struct ThresholdReport {
  double M = 0.0;
  double M_location = 0.0;
  double m_sigma = 0.0;
  double m_sigma_location = 0.0;
  double r_Omega = 0.0;
  double r_sigma_Omega = 0.0;
  double sigma = 0.0;
  double R = 1.0;
  bool truncated = false;
  std::vector<double> grid;
  std::vector<double> f_values;
};

namespace detail {

// Golden-section refinement of an extremum of f inside [a, b].
template <class F>
double golden_refine(F& f, double a, double b, bool maximize, double tol = 1e-7) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    bool left = maximize ? fc > fd : fc < fd;
    if (left) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

inline std::vector<double> threshold_grid() {
  std::vector<double> g{0.0, 1e-6, 1e-4, 1e-3, 5e-3};
  for (int k = 1; k <= 48; ++k) g.push_back(k / 100.0);
  for (double s : {0.485, 0.49, 0.492, 0.494, 0.495, 0.496, 0.497, 0.498, 0.4985, 0.499}) g.push_back(s);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

}  // namespace detail

/// M = sup f on (0,1/2), m_sigma = inf f on (0,sigma), r_Omega = e^M/R, r_{sigma,Omega} = e^{m_sigma}/R.
inline ThresholdReport thresholds(double R, double sigma_cut, const QuadratureConfig& cfg = functional_defaults()) {
  if (!(sigma_cut > 0.0 && sigma_cut < 0.5))
    throw DomainError("sigma must lie in (0, 1/2), got " + std::to_string(sigma_cut));
  if (!(R > 0.0)) throw std::invalid_argument("half-length R must be positive");
  ThresholdReport rep;
  rep.sigma = sigma_cut;
  rep.R = R;
  auto f = [&](double s) { return f_ratio(s, cfg); };
  std::vector<double> grid = detail::threshold_grid();
  if (std::find(grid.begin(), grid.end(), sigma_cut) == grid.end()) {
    grid.push_back(sigma_cut);
    std::sort(grid.begin(), grid.end());
  }
  for (double s : grid) {
    try {
      rep.f_values.push_back(f(s));
      rep.grid.push_back(s);
    } catch (const std::exception&) {
      rep.truncated = true;
      break;
    }
  }
  if (rep.grid.empty()) throw QuadratureError("threshold grid produced no values", 0.0, 0.0);
  auto best = [&](bool maximize, double upto, double& loc) {
    std::size_t idx = 0;
    bool found = false;
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
      if (rep.grid[i] > upto) break;
      if (!found || (maximize ? rep.f_values[i] > rep.f_values[idx] : rep.f_values[i] < rep.f_values[idx])) {
        idx = i;
        found = true;
      }
    }
    double value = rep.f_values[idx];
    loc = rep.grid[idx];
    bool interior = idx > 0 && idx + 1 < rep.grid.size() && rep.grid[idx + 1] <= upto;
    if (interior) {
      double s_star = detail::golden_refine(f, rep.grid[idx - 1], rep.grid[idx + 1], maximize);
      double v = f(s_star);
      if (maximize ? v > value : v < value) {
        value = v;
        loc = s_star;
      }
    }
    return value;
  };
  rep.M = best(true, 0.5, rep.M_location);
  rep.m_sigma = best(false, sigma_cut, rep.m_sigma_location);
  rep.r_Omega = std::exp(rep.M) / R;
  rep.r_sigma_Omega = std::exp(rep.m_sigma) / R;
  return rep;
}

/// d/ds J_inf = 2 R^{1+2s} r^{2s-1} g(s) (ln(R r) - f(s)).
inline double deriv_s_J_infty(double R, double r, double s, const QuadratureConfig& cfg = functional_defaults()) {
  if (!(s > 0.0 && s < 0.5)) throw DomainError("J_inf derivative needs s in (0, 1/2), got " + std::to_string(s));
  if (!(R > 0.0) || !(r > 0.0)) throw std::invalid_argument("R and r must be positive");
  double g = g_of_s(s, cfg);
  double gp = g_prime(s, cfg);
  double f = -gp / (2.0 * g);
  return 2.0 * std::pow(R, 1.0 + 2.0 * s) * std::pow(r, 2.0 * s - 1.0) * g * (std::log(R * r) - f);
}

}  // namespace levylab
