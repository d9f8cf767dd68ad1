#pragma once

// Efficiency functionals on the Fourier side.
//
//   J(s,T)      = int sigma(T w^{2s}) |p^|^2 dxi,         w = 2 pi |xi|   (normalised by 1/T)
//   T J(s,T)    = int (1 - e^{-T w^{2s}}) / w^{2s} |p^|^2 dxi             (unnormalised)
//   g(s,r,T)    = int sigma(T r^{-2s} w^{2s}) |chi^_Omega|^2 dxi
//   J_inf(r,s)  = r^{2s-1} int |chi^_Omega|^2 / w^{2s} dxi,  n = 1, 0 < s < 1/2

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "levylab/error.hpp"
#include "levylab/quadrature.hpp"
#include "levylab/semigroup.hpp"
#include "levylab/spectra.hpp"

namespace levylab {

/// Tolerances used by every functional unless the caller overrides them.
inline QuadratureConfig functional_defaults() {
  QuadratureConfig c;
  c.rel_tol = 1e-12;
  c.abs_tol = 1e-15;
  c.max_panels = 40000;
  return c;
}

struct EfficiencyQuery {
  SpectralDensity spectral;
  double s = 0.5;
  double T = 1.0;
  bool normalized = true;
  QuadratureConfig quadrature = functional_defaults();
};

namespace detail {

// int_{R^n} F(|xi|) |p^(xi)|^2 dxi for a radial weight F. `head` is the
// small-rho model of F (without the density factor).
inline IntegralResult integrate_weighted(const SpectralDensity& d, const RealFn& weight,
                                         QuadratureConfig cfg, std::optional<PowerHead> head = std::nullopt,
                                         std::vector<double> extra_breaks = {}) {
  const int n = d.dim;
  const int k = n - 1;
  auto radial_weight = [k](double rho) { return k == 0 ? 1.0 : (k == 1 ? rho : rho * rho); };
  for (double bp : d.breakpoints) extra_breaks.push_back(bp);
  if (head) {
    PowerHead h = *head;
    h.coefficient *= d.at_zero();
    cfg.power_head = h;
  }
  if (d.compact()) {
    IntegralResult total;
    double omega = sphere_measure(n);
    auto f = [&](double rho) {
      double w = weight(rho);
      return w == 0.0 ? 0.0 : radial_weight(rho) * w * d.radial(rho);
    };
    for (auto [lo, hi] : d.segments) {
      QuadratureConfig c = cfg;
      c.breakpoints.clear();
      for (double bp : extra_breaks)
        if (bp > lo && bp < hi) c.breakpoints.push_back(bp);
      if (c.power_head) c.power_head->exponent += k;
      if (lo > 0.0) c.power_head.reset();
      IntegralResult r = integrate_segment(f, lo, hi, c);
      total.value += r.value;
      total.error_estimate += r.error_estimate;
      total.panels_used += r.panels_used;
      total.converged = total.converged && r.converged;
    }
    total.value *= omega;
    total.error_estimate *= omega;
    return total;
  }
  cfg.breakpoints = extra_breaks;
  if (d.tail) {
    const TailModel& t = *d.tail;
    auto wrap = [&weight](const RealFn& h) -> RealFn {
      if (!h) return h;
      return [h, &weight](double x) { return weight(x) * h(x); };
    };
    cfg.oscillatory_tail = OscillatoryTail{t.omega, wrap(t.mean), wrap(t.cos_amplitude), wrap(t.sin_amplitude)};
  }
  auto f = [&](double rho) {
    double w = weight(rho);
    return w == 0.0 ? 0.0 : w * d.radial(rho);
  };
  return integrate_radial(n, f, cfg);
}

// Frequency radius where T w^{2s} = 1, in logs; +inf-safe.
inline double crossover_radius(double s, double T) {
  if (s <= 0.0) return std::numeric_limits<double>::infinity();
  double lg = -std::log(T) / (2.0 * s) - std::log(two_pi);
  return std::exp(std::clamp(lg, -700.0, 700.0));
}

inline double graded_head_cut(double s, double T) {
  double xc = crossover_radius(s, T);
  return std::clamp(std::min(1e-30, 1e-12 * xc), 1e-300, 1e-30);
}

inline void check_time(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("time span T must be positive and finite");
}

}  // namespace detail

/// J(s,T) (normalised) or T J(s,T) (unnormalised) for the query's density.
inline IntegralResult eval_efficiency(const EfficiencyQuery& q) {
  LevyExponent s(q.s);
  detail::check_time(q.T);
  double T = q.T;
  auto weight = [s = s.value(), T](double rho) { return sigma(multiplier_arg(s, T, rho)); };
  QuadratureConfig cfg = q.quadrature;
  if (!cfg.head_cut) cfg.head_cut = detail::graded_head_cut(s, T);
  IntegralResult r = detail::integrate_weighted(q.spectral, weight, cfg);
  if (!q.normalized) {
    r.value *= T;
    r.error_estimate *= T;
    r.tail_bound *= T;
  }
  return r;
}

/// Uniform self-search on a shape (dilation carried by the shape).
inline IntegralResult eval_efficiency(const DomainShape& shape, double s, double T, bool normalized = true,
                                      const QuadratureConfig& cfg = functional_defaults()) {
  return eval_efficiency(EfficiencyQuery{uniform_prey(shape), s, T, normalized, cfg});
}

/// |Omega_1 cap Omega_2| / (|Omega_1| |Omega_2|).
inline double stationary_overlap(const DomainShape& one, const DomainShape& two) {
  if (one.dim() != two.dim()) throw std::invalid_argument("overlap needs shapes of the same dimension");
  DomainShape a = one.materialized(), b = two.materialized();
  if (a.kind() != b.kind()) throw std::invalid_argument("overlap of an interval with a ball is unsupported");
  double inter = 0.0;
  if (a.kind() == DomainShape::Kind::interval) {
    inter = std::max(0.0, std::min(a.b(), b.b()) - std::max(a.a(), b.a()));
  } else {
    double d2 = 0.0;
    for (int i = 0; i < 3; ++i) d2 += std::pow(a.center()[i] - b.center()[i], 2);
    double d = std::sqrt(d2), r1 = a.radius(), r2 = b.radius();
    if (d >= r1 + r2) {
      inter = 0.0;
    } else if (d <= std::abs(r1 - r2)) {
      inter = std::min(a.measure(), b.measure());
    } else if (a.dim() == 2) {
      double p1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2 * d * r1), -1.0, 1.0));
      double p2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2 * d * r2), -1.0, 1.0));
      double k = 0.5 * std::sqrt(std::max(0.0, (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)));
      inter = r1 * r1 * p1 + r2 * r2 * p2 - k;
    } else {
      double s = r1 + r2 - d;
      inter = pi * s * s * (d * d + 2 * d * (r1 + r2) - 3 * (r1 - r2) * (r1 - r2)) / (12 * d);
    }
  }
  return inter / (a.measure() * b.measure());
}

/// g(s,r,T) = int sigma(T r^{-2s} w^{2s}) |chi^_Omega|^2 over the undilated base.
inline IntegralResult dilation_kernel_integral(const DomainShape& base, double r, double s, double T,
                                               const QuadratureConfig& cfg = functional_defaults()) {
  LevyExponent ls(s);
  detail::check_time(T);
  if (!(r > 0.0)) throw std::invalid_argument("dilation r must be positive");
  SpectralDensity d = indicator_density(base);
  auto weight = [s, T, r](double rho) { return sigma(multiplier_arg(s, T, rho, r)); };
  QuadratureConfig c = cfg;
  double t_eff = s == 0.0 ? T : std::exp(std::log(T) - 2.0 * s * std::log(r));
  if (!c.head_cut) c.head_cut = detail::graded_head_cut(s, t_eff);
  return detail::integrate_weighted(d, weight, c);
}

/// J^{Omega_r}(s,T) through the rescaled-time route g(s,r,T) / (r^n |Omega|^2).
inline IntegralResult eval_scaled(const DomainShape& base, double r, double s, double T,
                                  const QuadratureConfig& cfg = functional_defaults()) {
  DomainShape b = base.with_dilation(1.0);
  IntegralResult g = dilation_kernel_integral(b, r, s, T, cfg);
  double scale = std::pow(r, b.dim()) * b.base_measure() * b.base_measure();
  g.value /= scale;
  g.error_estimate /= scale;
  g.tail_bound /= scale;
  return g;
}

/// Band half-width of the shifted-band surface.
inline constexpr double l_surface_half_width = 1.0 / (3.0 * pi);

/// L(s,r): unnormalised T = 1 efficiency of the one-sided band chi_{B_{1/(3 pi)}}(xi - r).
inline IntegralResult eval_L_surface(double s, double r, const QuadratureConfig& cfg = functional_defaults()) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("L surface needs s in (0, 1), got " + std::to_string(s));
  if (!(r >= 0.0)) throw std::invalid_argument("shift r must be nonnegative");
  return eval_efficiency(EfficiencyQuery{shifted_band(r, l_surface_half_width), s, 1.0, false, cfg});
}

/// int_R |chi^_{(-R,R)}|^2 w^{-2s} ln^m(w) dxi, w = 2 pi |xi|; needs 0 <= s < 1/2.
inline IntegralResult spectral_moment(double R, double s, int m,
                                      const QuadratureConfig& cfg = functional_defaults()) {
  if (!(s >= 0.0 && s < 0.5))
    throw DomainError("long-time integrals diverge unless 0 <= s < 1/2, got s=" + std::to_string(s));
  if (!(R > 0.0)) throw std::invalid_argument("half-length R must be positive");
  if (m < 0 || m > 4) throw std::invalid_argument("log power must be in 0..4");
  SpectralDensity d = indicator_density(DomainShape::interval(-R, R));
  auto weight = [s, m](double rho) {
    double w = two_pi * rho;
    double lw = std::log(w);
    return std::exp(-2.0 * s * lw) * std::pow(lw, m);
  };
  PowerHead head{std::pow(two_pi, -2.0 * s), -2.0 * s, m, two_pi};
  return detail::integrate_weighted(d, weight, cfg, head);
}

/// J_inf(r, s) for the interval (a - R, a + R); independent of a.
inline IntegralResult eval_J_infty(double R, double r, double s, const QuadratureConfig& cfg = functional_defaults()) {
  if (!(s > 0.0 && s < 0.5))
    throw DomainError("J_inf diverges when s >= 1/2 and needs s > 0, got s=" + std::to_string(s));
  if (!(r > 0.0)) throw std::invalid_argument("dilation r must be positive");
  IntegralResult m = spectral_moment(R, s, 0, cfg);
  double pre = std::pow(r, 2.0 * s - 1.0);
  m.value *= pre;
  m.error_estimate *= pre;
  m.tail_bound *= pre;
  return m;
}

inline IntegralResult eval_J_infty(const DomainShape& interval, double r, double s,
                                   const QuadratureConfig& cfg = functional_defaults()) {
  if (interval.kind() != DomainShape::Kind::interval) throw std::invalid_argument("J_inf is defined for intervals");
  return eval_J_infty(interval.radius(), r, s, cfg);
}

/// g(s) = int |chi^_{(-1,1)}|^2 w^{-2s}.
inline double g_of_s(double s, const QuadratureConfig& cfg = functional_defaults()) {
  return spectral_moment(1.0, s, 0, cfg).value;
}
/// g'(s) = -2 int |chi^_{(-1,1)}|^2 w^{-2s} ln w.
inline double g_prime(double s, const QuadratureConfig& cfg = functional_defaults()) {
  return -2.0 * spectral_moment(1.0, s, 1, cfg).value;
}
/// g''(s) = 4 int |chi^_{(-1,1)}|^2 w^{-2s} ln^2 w.
inline double g_second(double s, const QuadratureConfig& cfg = functional_defaults()) {
  return 4.0 * spectral_moment(1.0, s, 2, cfg).value;
}
/// f(s) = -g'(s) / (2 g(s)).
inline double f_ratio(double s, const QuadratureConfig& cfg = functional_defaults()) {
  return -g_prime(s, cfg) / (2.0 * g_of_s(s, cfg));
}

}  // namespace levylab
