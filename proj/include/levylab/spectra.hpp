#pragma once

// Squared Fourier moduli |p^(xi)|^2 of prey distributions: uniform prey on
// intervals and balls, and frequency bands used as synthetic spectra.
//
// A SpectralDensity stores a radial profile rad(rho) normalised so that for
// every radial weight F
//   int_{R^n} F(|xi|) |p^(xi)|^2 dxi = |S^{n-1}| int_0^inf F(rho) rad(rho) rho^{n-1} drho.
// In 1D rad is the even part (p(rho) + p(-rho)) / 2, so one-sided densities fit too.

#include <boost/math/special_functions/bessel.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "levylab/quadrature.hpp"
#include "levylab/semigroup.hpp"

namespace levylab {

inline constexpr double pi = std::numbers::pi;

/// Bounded convex prey region: interval (a, b) or ball of radius R in R^n, dilated by r.
class DomainShape {
 public:
  enum class Kind { interval, ball };

  static DomainShape interval(double a, double b, double r = 1.0) {
    if (!(a < b)) throw std::invalid_argument("interval needs a < b");
    DomainShape s;
    s.kind_ = Kind::interval;
    s.a_ = a;
    s.b_ = b;
    s.n_ = 1;
    s.set_dilation(r);
    return s;
  }

  static DomainShape ball(int n, double radius, double r = 1.0, std::array<double, 3> center = {0, 0, 0}) {
    if (n < 1 || n > 3) throw std::invalid_argument("ball dimension must be 1, 2 or 3, got " + std::to_string(n));
    if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
    if (n == 1) return interval(center[0] - radius, center[0] + radius, r);
    DomainShape s;
    s.kind_ = Kind::ball;
    s.n_ = n;
    s.radius_ = radius;
    s.center_ = center;
    s.set_dilation(r);
    return s;
  }

  Kind kind() const noexcept { return kind_; }
  int dim() const noexcept { return n_; }
  double dilation() const noexcept { return r_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double radius() const noexcept { return kind_ == Kind::interval ? 0.5 * (b_ - a_) : radius_; }
  const std::array<double, 3>& center() const noexcept { return center_; }

  /// Measure of the undilated region.
  double base_measure() const {
    if (kind_ == Kind::interval) return b_ - a_;
    return n_ == 2 ? pi * radius_ * radius_ : 4.0 / 3.0 * pi * radius_ * radius_ * radius_;
  }
  /// Measure of the dilated region, r^n |Omega|.
  double measure() const { return std::pow(r_, n_) * base_measure(); }

  DomainShape with_dilation(double r) const {
    DomainShape s = *this;
    s.set_dilation(r);
    return s;
  }

  /// Same region with the dilation folded into the coordinates (r = 1).
  DomainShape materialized() const {
    DomainShape s = *this;
    s.a_ *= r_;
    s.b_ *= r_;
    s.radius_ *= r_;
    for (auto& c : s.center_) c *= r_;
    s.r_ = 1.0;
    return s;
  }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    if (kind_ == Kind::interval)
      os << "interval:" << a_ << "," << b_;
    else
      os << "ball:" << n_ << "," << radius_;
    if (r_ != 1.0) os << "@r=" << r_;
    return os.str();
  }

 private:
  void set_dilation(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("dilation must be positive");
    r_ = r;
  }
  Kind kind_ = Kind::interval;
  int n_ = 1;
  double a_ = -1.0, b_ = 1.0, radius_ = 1.0, r_ = 1.0;
  std::array<double, 3> center_{0, 0, 0};
};

enum class SupportKind { all, inside_ball, outside_ball, band };

/// Radial support: |xi| in [inner, outer].
struct Support {
  SupportKind kind = SupportKind::all;
  double inner = 0.0;
  double outer = std::numeric_limits<double>::infinity();
};

/// rad(rho) = mean + cos_amplitude cos(omega rho) + sin_amplitude sin(omega rho) for large rho.
struct TailModel {
  double omega = 0.0;
  RealFn mean;
  RealFn cos_amplitude;
  RealFn sin_amplitude;
};

struct SpectralDensity {
  int dim = 1;
  RealFn radial;
  RealFn line;  // signed 1D evaluator; empty when dim > 1
  bool is_radial = true;
  Support support;
  double mass = 0.0;
  double decay_exponent = 0.0;
  std::vector<std::pair<double, double>> segments;  // pieces of compact support; empty if unbounded
  std::vector<double> breakpoints;
  std::optional<TailModel> tail;
  std::string label;

  bool compact() const { return !segments.empty(); }
  double at_zero() const { return radial(0.0); }

  /// |p^(xi)|^2 at a point of R^dim.
  double operator()(double xi) const { return line ? line(xi) : radial(std::abs(xi)); }
  double evaluate(const std::vector<double>& xi) const {
    if (static_cast<int>(xi.size()) != dim) throw std::invalid_argument("frequency vector has wrong dimension");
    if (dim == 1) return (*this)(xi[0]);
    double s = 0.0;
    for (double v : xi) s += v * v;
    return radial(std::sqrt(s));
  }
};

/// Fourier transform of the indicator of (-R, R): sin(2 pi R xi) / (pi xi), 2R at 0.
inline double chi_hat_interval(double R, double xi) {
  double x = two_pi * R * xi;
  if (std::abs(x) < 1e-8) return 2.0 * R * (1.0 - x * x / 6.0);
  return 2.0 * R * std::sin(x) / x;
}

/// Fourier transform of the indicator of (a, b) at xi.
inline std::complex<double> interval_transform(double a, double b, double xi) {
  double len = b - a;
  double mid = 0.5 * (a + b);
  double mag = chi_hat_interval(0.5 * len, xi);
  return mag * std::polar(1.0, -two_pi * mid * xi);
}

namespace detail {

// 3 (sin u - u cos u) / u^3, normalised ball profile in 3D
inline double ball3_profile(double u) {
  u = std::abs(u);
  if (u < 0.1) {
    double u2 = u * u;
    return 1.0 - u2 / 10.0 + u2 * u2 / 280.0 - u2 * u2 * u2 / 15120.0 + u2 * u2 * u2 * u2 / 1330560.0;
  }
  return 3.0 * (std::sin(u) - u * std::cos(u)) / (u * u * u);
}

// 2 J1(u) / u
inline double ball2_profile(double u) {
  u = std::abs(u);
  if (u < 1e-4) return 1.0 - u * u / 8.0;
  return 2.0 * boost::math::cyl_bessel_j(1, u) / u;
}

// sin(x) / x
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace detail

/// Radial Fourier transform of the indicator of the ball B_R in R^n.
inline double chi_hat_ball(int n, double R, double xi_mag) {
  switch (n) {
    case 1: return chi_hat_interval(R, xi_mag);
    case 2: return pi * R * R * detail::ball2_profile(two_pi * R * xi_mag);
    case 3: return 4.0 / 3.0 * pi * R * R * R * detail::ball3_profile(two_pi * R * xi_mag);
    default: throw std::invalid_argument("chi_hat_ball supports n in {1,2,3}, got " + std::to_string(n));
  }
}

/// |p^|^2 of the uniform prey chi_Omega / |Omega| on the (dilated) shape.
inline SpectralDensity uniform_prey(const DomainShape& shape) {
  SpectralDensity d;
  d.dim = shape.dim();
  d.mass = 1.0 / shape.measure();
  d.support = {SupportKind::all, 0.0, std::numeric_limits<double>::infinity()};
  d.label = "uniform " + shape.describe();
  if (shape.kind() == DomainShape::Kind::interval) {
    double len = shape.dilation() * (shape.b() - shape.a());
    d.radial = [len](double rho) {
      double v = detail::sinc(pi * len * rho);
      return v * v;
    };
    d.line = [len](double xi) {
      double v = detail::sinc(pi * len * xi);
      return v * v;
    };
    d.decay_exponent = 2.0;
    double c = 1.0 / (2.0 * pi * pi * len * len);
    d.tail = TailModel{two_pi * len, [c](double x) { return c / (x * x); },
                       [c](double x) { return -c / (x * x); }, nullptr};
    return d;
  }
  double R = shape.dilation() * shape.radius();
  if (shape.dim() == 3) {
    d.radial = [R](double rho) {
      double v = detail::ball3_profile(two_pi * R * rho);
      return v * v;
    };
    d.decay_exponent = 4.0;
    auto u_of = [R](double x) { return two_pi * R * x; };
    d.tail = TailModel{
        4.0 * pi * R,
        [u_of](double x) {
          double u = u_of(x), u6 = std::pow(u, 6);
          return 9.0 * (1.0 + u * u) / (2.0 * u6);
        },
        [u_of](double x) {
          double u = u_of(x), u6 = std::pow(u, 6);
          return 9.0 * (u * u - 1.0) / (2.0 * u6);
        },
        [u_of](double x) {
          double u = u_of(x);
          return -9.0 / std::pow(u, 5);
        }};
  } else {
    d.radial = [R](double rho) {
      double v = detail::ball2_profile(two_pi * R * rho);
      return v * v;
    };
    d.decay_exponent = 3.0;
    struct PQ {
      double p, q;
    };
    auto pq = [](double x) {
      double x2 = x * x;
      return PQ{1.0 + 15.0 / (128.0 * x2) - 14175.0 / (98304.0 * x2 * x2),
                3.0 / (8.0 * x) - 105.0 / (1024.0 * x2 * x)};
    };
    auto u_of = [R](double x) { return two_pi * R * x; };
    d.tail = TailModel{
        4.0 * pi * R,
        [=](double x) {
          double u = u_of(x);
          auto [p, q] = pq(u);
          return 4.0 * (p * p + q * q) / (pi * u * u * u);
        },
        [=](double x) {
          double u = u_of(x);
          auto [p, q] = pq(u);
          return -8.0 * p * q / (pi * u * u * u);
        },
        [=](double x) {
          double u = u_of(x);
          auto [p, q] = pq(u);
          return -4.0 * (p * p - q * q) / (pi * u * u * u);
        }};
  }
  return d;
}

/// Unnormalised |chi^_Omega|^2 of the undilated base shape (used by the
/// scaling route and the long-time functional).
inline SpectralDensity indicator_density(const DomainShape& shape) {
  DomainShape base = shape.with_dilation(1.0);
  SpectralDensity d = uniform_prey(base);
  double m2 = base.base_measure() * base.base_measure();
  auto scale = [m2](RealFn f) -> RealFn {
    if (!f) return f;
    return [f, m2](double x) { return m2 * f(x); };
  };
  d.radial = scale(d.radial);
  d.line = scale(d.line);
  if (d.tail) {
    d.tail->mean = scale(d.tail->mean);
    d.tail->cos_amplitude = scale(d.tail->cos_amplitude);
    d.tail->sin_amplitude = scale(d.tail->sin_amplitude);
  }
  d.mass = base.base_measure();
  d.label = "indicator " + base.describe();
  return d;
}

/// Unit-height band on +-(c - b, c + b); the union of the two mirrored
/// intervals, so the prey stays real.
inline SpectralDensity band_density(double c, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("band half-width must be positive");
  if (!(c >= 0.0)) throw std::invalid_argument("band center must be nonnegative");
  SpectralDensity d;
  d.dim = 1;
  double lo = std::max(c - b, 0.0), hi = c + b;
  d.radial = [lo, hi](double rho) { return (rho >= lo && rho <= hi) ? 1.0 : 0.0; };
  d.line = [lo, hi](double xi) {
    double a = std::abs(xi);
    return (a >= lo && a <= hi) ? 1.0 : 0.0;
  };
  d.mass = 2.0 * (hi - lo);
  d.decay_exponent = std::numeric_limits<double>::infinity();
  d.segments = {{lo, hi}};
  if (lo == 0.0)
    d.support = {SupportKind::inside_ball, 0.0, hi};
  else
    d.support = {SupportKind::band, lo, hi};
  std::ostringstream os;
  os.precision(17);
  os << "band c=" << c << " b=" << b;
  d.label = os.str();
  return d;
}

/// One-sided unit-height band chi_{(c-b, c+b)}(xi), c >= 0.
inline SpectralDensity shifted_band(double c, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("band half-width must be positive");
  if (!(c >= 0.0)) throw std::invalid_argument("band shift must be nonnegative");
  SpectralDensity d;
  d.dim = 1;
  d.is_radial = c == 0.0;
  double lo = c - b, hi = c + b;
  d.line = [lo, hi](double xi) { return (xi > lo && xi < hi) ? 1.0 : 0.0; };
  d.radial = [lo, hi](double rho) {
    double v = 0.0;
    if (rho > lo && rho < hi) v += 0.5;
    if (-rho > lo && -rho < hi) v += 0.5;
    return v;
  };
  d.mass = 2.0 * b;
  d.decay_exponent = std::numeric_limits<double>::infinity();
  if (lo >= 0.0) {
    d.segments = {{lo, hi}};
    d.support = {SupportKind::band, lo, hi};
  } else {
    d.segments = {{0.0, -lo}, {-lo, hi}};
    d.support = {SupportKind::inside_ball, 0.0, hi};
  }
  std::ostringstream os;
  os.precision(17);
  os << "shifted band c=" << c << " b=" << b;
  d.label = os.str();
  return d;
}

/// Wraps a user-supplied radial profile. Without a tail model the far field goes
/// through the smooth log-mapped tail rule, so the profile should not oscillate.
inline SpectralDensity custom_density(int dim, RealFn radial, double mass, double decay_exponent,
                                      std::string label = "custom") {
  if (dim < 1 || dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  SpectralDensity d;
  d.dim = dim;
  d.radial = std::move(radial);
  d.mass = mass;
  d.decay_exponent = decay_exponent;
  d.label = std::move(label);
  return d;
}

}  // namespace levylab
