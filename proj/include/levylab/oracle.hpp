#pragma once

// Independent cross-checks built on Boost.Math quadrature, sharing nothing
// with the adaptive panel scheme in quadrature.hpp:
//   time-frequency double quadrature (no closed-form time integral),
//   real-space kernels for s = 1 (Gauss) and s = 1/2 (Poisson) in 1D,
//   central finite differences,
// plus a registry of named comparisons.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "levylab/calculus.hpp"
#include "levylab/parallel.hpp"

namespace levylab {

struct OracleComparison {
  std::string name;
  double primary_value = 0.0;
  double oracle_value = 0.0;
  double rel_gap = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
};

inline OracleComparison compare(std::string name, double primary, double oracle, double tolerance) {
  OracleComparison c;
  c.name = std::move(name);
  c.primary_value = primary;
  c.oracle_value = oracle;
  double scale = std::max(std::abs(oracle), std::numeric_limits<double>::min());
  c.rel_gap = std::abs(primary - oracle) / scale;
  c.tolerance = tolerance;
  c.passed = c.rel_gap <= tolerance;
  return c;
}

/// (F(s + h) - F(s - h)) / (2 h).
inline double finite_diff(const std::function<double(double)>& f, double s, double h = 1e-5) {
  if (!(h > 0.0)) throw std::invalid_argument("finite difference step must be positive");
  return (f(s + h) - f(s - h)) / (2.0 * h);
}

namespace oracle_detail {

namespace bq = boost::math::quadrature;

inline bq::tanh_sinh<double>& tanh_sinh_rule() {
  static thread_local bq::tanh_sinh<double> rule;
  return rule;
}

inline bq::exp_sinh<double>& exp_sinh_rule() {
  static thread_local bq::exp_sinh<double> rule;
  return rule;
}

template <class F>
double gk61(F f, double a, double b, double tol = 1e-13) {
  return bq::gauss_kronrod<double, 61>::integrate(f, a, b, 12, tol);
}

// int_{R^n} F(|xi|) |p^|^2 with Boost rules: tanh-sinh on the first period
// (tolerates a singular or kinked weight at 0), Gauss-Kronrod over whole
// periods, exp-sinh for the mean tail and Ooura's Fourier rules for the
// oscillating tail parts.
inline double weighted(const SpectralDensity& d, const std::function<double(double)>& weight, int periods = 48) {
  const int k = d.dim - 1;
  auto rw = [k](double rho) { return k == 0 ? 1.0 : (k == 1 ? rho : rho * rho); };
  auto body = [&](double rho) {
    double w = weight(rho);
    return w == 0.0 ? 0.0 : rw(rho) * w * d.radial(rho);
  };
  double omega_n = sphere_measure(d.dim);
  if (d.compact()) {
    double total = 0.0;
    for (auto [lo, hi] : d.segments) {
      if (lo == 0.0)
        total += tanh_sinh_rule().integrate(body, lo, hi, 1e-14);
      else
        total += gk61(body, lo, hi);
    }
    return omega_n * total;
  }
  if (!d.tail) throw std::invalid_argument("oracle needs a tail model for unbounded spectra");
  const TailModel& t = *d.tail;
  double period = 2.0 * std::numbers::pi / t.omega;
  double total = tanh_sinh_rule().integrate(body, 0.0, period, 1e-14);
  for (int j = 1; j < periods; ++j) total += gk61(body, j * period, (j + 1) * period);
  double x = periods * period;
  auto mean = [&](double rho) { return rw(rho) * weight(rho) * t.mean(rho); };
  total += exp_sinh_rule().integrate(mean, x, std::numeric_limits<double>::infinity(), 1e-14);
  if (t.cos_amplitude) {
    bq::ooura_fourier_cos<double> cos_rule(1e-12);
    auto a = [&](double u) { return rw(x + u) * weight(x + u) * t.cos_amplitude(x + u); };
    total += cos_rule.integrate(a, t.omega).first;
  }
  if (t.sin_amplitude) {
    bq::ooura_fourier_sin<double> sin_rule(1e-12);
    auto b = [&](double u) { return rw(x + u) * weight(x + u) * t.sin_amplitude(x + u); };
    total += sin_rule.integrate(b, t.omega).first;
  }
  return omega_n * total;
}

}  // namespace oracle_detail

/// int_0^T int e^{-t w^{2s}} |p^|^2 dxi dt, the t-integral done numerically.
inline double time_freq_double_quadrature(const SpectralDensity& d, double s, double T) {
  LevyExponent ls(s);
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  auto inner = [&](double t) {
    return oracle_detail::weighted(d, [s, t](double rho) { return multiplier(s, t, rho); });
  };
  return oracle_detail::tanh_sinh_rule().integrate(inner, 0.0, T, 1e-12);
}

/// (1 / (T |Omega|^2)) int_0^T int int_{Omega x Omega} G^s(t, x, y) for s in {1/2, 1}.
inline double realspace_kernel_J(const DomainShape& base, double s, double T) {
  if (base.kind() != DomainShape::Kind::interval) throw std::invalid_argument("real-space route is 1D only");
  if (s != 1.0 && s != 0.5) throw DomainError("real-space kernels are known only for s = 1/2 and s = 1");
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  const double L = base.materialized().b() - base.materialized().a();
  // int int G = int_{-L}^{L} (L - |d|) G(t, d) dd
  auto pair_mass = [&](double t) -> double {
    if (t <= 0.0) return L;
    if (s == 1.0) {
      // d = 2 sqrt(t) v
      double st = std::sqrt(t);
      double vmax = std::min(L / (2.0 * st), 40.0);
      auto g = [&](double v) { return (L - 2.0 * st * v) * std::exp(-v * v); };
      return 2.0 / std::sqrt(std::numbers::pi) * oracle_detail::gk61(g, 0.0, vmax);
    }
    // d = t tan(phi)
    double phimax = std::atan(L / t);
    auto g = [&](double phi) { return L - t * std::tan(phi); };
    return 2.0 / std::numbers::pi * oracle_detail::gk61(g, 0.0, phimax);
  };
  double integral = oracle_detail::tanh_sinh_rule().integrate(pair_mass, 0.0, T, 1e-12);
  return integral / (T * L * L);
}

/// int_R |chi^_{(-R,R)}|^2 w^{-2s} ln^m w by the Boost route.
inline double spectral_moment_oracle(double R, double s, int m) {
  SpectralDensity d = indicator_density(DomainShape::interval(-R, R));
  return oracle_detail::weighted(d, [s, m](double rho) {
    double lw = std::log(two_pi * rho);
    return std::exp(-2.0 * s * lw) * std::pow(lw, m);
  });
}

struct OracleCase {
  std::string name;
  std::function<OracleComparison()> run;
};

/// Every closed-form route paired with an independent check. Oracle
/// tolerances sit 100x above the primary quadrature tolerance.
inline std::vector<OracleCase> oracle_suite() {
  std::vector<OracleCase> cases;
  auto interval = DomainShape::interval(-1.0, 1.0);
  auto add = [&](std::string name, std::function<OracleComparison()> f) {
    cases.push_back({name, [name, f] {
                       auto t0 = std::chrono::steady_clock::now();
                       OracleComparison c = f();
                       c.name = name;
                       c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                       return c;
                     }});
  };
  add("efficiency-vs-time-frequency/interval", [=] {
    double p = eval_efficiency(interval, 0.5, 1.0, false).value;
    double o = time_freq_double_quadrature(uniform_prey(interval), 0.5, 1.0);
    return compare("", p, o, 1e-8);
  });
  add("efficiency-vs-time-frequency/band", [=] {
    auto b = band_density(0.0, 0.3);
    double p = eval_efficiency(EfficiencyQuery{b, 0.75, 10.0, false}).value;
    double o = time_freq_double_quadrature(b, 0.75, 10.0);
    return compare("", p, o, 1e-8);
  });
  add("efficiency-vs-time-frequency/ball3", [=] {
    auto ball = DomainShape::ball(3, 1.0);
    double p = eval_efficiency(ball, 0.5, 1.0, false).value;
    double o = time_freq_double_quadrature(uniform_prey(ball), 0.5, 1.0);
    return compare("", p, o, 1e-8);
  });
  add("efficiency-vs-realspace/gauss", [=] {
    return compare("", eval_efficiency(interval, 1.0, 1.0).value, realspace_kernel_J(interval, 1.0, 1.0), 1e-6);
  });
  add("efficiency-vs-realspace/poisson", [=] {
    return compare("", eval_efficiency(interval, 0.5, 1.0).value, realspace_kernel_J(interval, 0.5, 1.0), 1e-6);
  });
  add("scaled-vs-dilated", [=] {
    return compare("", eval_scaled(interval, 2.0, 0.5, 1.0).value,
                   eval_efficiency(interval.with_dilation(2.0), 0.5, 1.0).value, 1e-10);
  });
  add("deriv-unnormalized-vs-fd", [=] {
    auto b = band_density(0.0, 0.3);
    auto F = [&](double s) { return eval_efficiency(EfficiencyQuery{b, s, 1.0, false}).value; };
    return compare("", deriv_s_unnormalized(b, 0.5, 1.0).value, finite_diff(F, 0.5), 1e-6);
  });
  add("deriv-g-vs-fd", [=] {
    auto F = [&](double s) { return dilation_kernel_integral(interval, 3.0, s, 10.0).value; };
    return compare("", deriv_s_g(interval, 3.0, 0.4, 10.0).total, finite_diff(F, 0.4), 1e-6);
  });
  add("deriv-Jinf-vs-fd", [=] {
    auto F = [](double s) { return eval_J_infty(1.0, 1.0, s).value; };
    return compare("", deriv_s_J_infty(1.0, 1.0, 0.25), finite_diff(F, 0.25), 1e-6);
  });
  add("Jinf-vs-boost", [=] {
    return compare("", eval_J_infty(1.0, 1.0, 0.25).value, spectral_moment_oracle(1.0, 0.25, 0), 1e-8);
  });
  add("gprime-vs-boost", [=] {
    return compare("", g_prime(0.1), -2.0 * spectral_moment_oracle(1.0, 0.1, 1), 1e-8);
  });
  add("gprime-vs-fd", [=] {
    auto F = [](double s) { return g_of_s(s); };
    return compare("", g_prime(0.2), finite_diff(F, 0.2), 1e-6);
  });
  add("gsecond-vs-fd", [=] {
    auto F = [](double s) { return g_prime(s); };
    return compare("", g_second(0.2), finite_diff(F, 0.2), 1e-6);
  });
  add("L-surface-vs-time-frequency", [=] {
    auto b = shifted_band(0.1, l_surface_half_width);
    return compare("", eval_L_surface(0.6, 0.1).value, time_freq_double_quadrature(b, 0.6, 1.0), 1e-8);
  });
  return cases;
}

inline std::vector<OracleComparison> run_oracle_suite(const std::vector<OracleCase>& cases = oracle_suite()) {
  std::vector<OracleComparison> out(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) { out[i] = cases[i].run(); });
  return out;
}

}  // namespace levylab
