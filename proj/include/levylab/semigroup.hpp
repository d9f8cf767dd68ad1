#pragma once

// Scalar building blocks of the fractional heat semigroup on the Fourier side:
// the multiplier exp(-t (2 pi |xi|)^{2s}), the time-averaging factor
// sigma(u) = (1 - e^{-u}) / u with its derivative, theta(u) = -u sigma'(u),
// and k(xi, s) = 2 ln(2 pi |xi|) (2 pi |xi|)^{2s}.
//
// Fourier convention: p^(xi) = int p(x) e^{-2 pi i x.xi} dx. Every functional
// consumes |p^|^2 only, so the sign of the exponent never matters.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "levylab/error.hpp"

namespace levylab {

inline constexpr double two_pi = 2.0 * std::numbers::pi;
/// Frequency radius where ln(2 pi |xi|) changes sign.
inline constexpr double critical_radius = 1.0 / two_pi;

/// Diffusion exponent s of -(-Delta)^s, restricted to [0, 1].
class LevyExponent {
 public:
  constexpr LevyExponent() = default;
  explicit LevyExponent(double s) : s_(s) {
    if (!(s >= 0.0 && s <= 1.0))
      throw std::invalid_argument("Levy exponent must lie in [0, 1], got " + std::to_string(s));
  }
  constexpr double value() const noexcept { return s_; }
  constexpr operator double() const noexcept { return s_; }

 private:
  double s_ = 0.5;
};

/// Checks lo <op> s <op> hi with open or closed ends and throws DomainError.
inline void require_exponent(double s, double lo, bool lo_open, double hi, bool hi_open,
                             const char* what) {
  bool ok = (lo_open ? s > lo : s >= lo) && (hi_open ? s < hi : s <= hi);
  if (!ok) {
    throw DomainError(std::string(what) + ": exponent s=" + std::to_string(s) + " outside " +
                      (lo_open ? "(" : "[") + std::to_string(lo) + ", " + std::to_string(hi) +
                      (hi_open ? ")" : "]"));
  }
}

/// Dimensionless argument u = T r^{-2s} (2 pi rho)^{2s}, built in log space so
/// that extreme T, r or rho saturate to 0 or +inf instead of overflowing.
/// Convention: (2 pi * 0)^0 = 1, so at s = 0 the argument is T for every rho.
inline double multiplier_arg(double s, double t, double rho, double r = 1.0) {
  if (s == 0.0) return t;
  if (rho == 0.0) return 0.0;
  double log_u = 2.0 * s * std::log(two_pi * rho) + std::log(t) - 2.0 * s * std::log(r);
  if (log_u > 709.0) return std::numeric_limits<double>::infinity();
  if (log_u < -745.0) return 0.0;
  return std::exp(log_u);
}

/// exp(-t (2 pi |xi|)^{2s}); the Fourier symbol of the semigroup at time t.
inline double multiplier(double s, double t, double xi_mag) {
  return std::exp(-multiplier_arg(s, t, xi_mag));
}

namespace detail {

// Alternating power series sum_{k>=1} (-1)^{k+1} k/(k+1)! u^k. Used where the
// closed forms for theta and sigma' cancel catastrophically.
inline double theta_series(double u) {
  double term = 0.5 * u;  // k = 1
  double sum = term;
  double factorial_ratio = 0.5;
  double power = u;
  for (int k = 2; k < 40; ++k) {
    factorial_ratio /= (k + 1);
    power *= -u;
    term = k * factorial_ratio * power;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

inline constexpr double taylor_switch = 1e-4;
inline constexpr double series_switch = 0.5;

}  // namespace detail

/// sigma(u) = (1 - e^{-u}) / u, sigma(0) = 1. Strictly decreasing, range (0, 1].
inline double sigma(double u) {
  if (u < detail::taylor_switch) return 1.0 - u / 2.0 + u * u / 6.0 - u * u * u / 24.0;
  if (std::isinf(u)) return 0.0;
  return -std::expm1(-u) / u;
}

/// theta(u) = -u sigma'(u) = (1 - e^{-u}(u + 1)) / u, theta(0) = 0.
inline double theta(double u) {
  if (u < detail::taylor_switch) return u / 2.0 - u * u / 3.0 + u * u * u / 8.0 - u * u * u * u / 30.0;
  if (u < detail::series_switch) return detail::theta_series(u);
  if (std::isinf(u)) return 0.0;
  return (-std::expm1(-u) - u * std::exp(-u)) / u;
}

/// d sigma / du, nonpositive; sigma'(0) = -1/2 by continuity.
inline double sigma_prime(double u) {
  if (u < detail::taylor_switch) return -0.5 + u / 3.0 - u * u / 8.0 + u * u * u / 30.0;
  if (u < detail::series_switch) return -detail::theta_series(u) / u;
  if (std::isinf(u)) return 0.0;
  return (u * std::exp(-u) + std::expm1(-u)) / (u * u);
}

/// k(xi, s) = 2 ln(2 pi |xi|) (2 pi |xi|)^{2s}; negative exactly inside the
/// critical ball |xi| < 1/(2 pi).
inline double k_factor(double s, double xi_mag) {
  if (!(xi_mag > 0.0)) throw std::invalid_argument("k_factor needs |xi| > 0");
  double w = two_pi * xi_mag;
  return 2.0 * std::log(w) * std::pow(w, 2.0 * s);
}

}  // namespace levylab
