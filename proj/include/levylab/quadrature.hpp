#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature on [0, inf) for integrands that are
// bounded or power-singular at 0 and carry a sin^2-modulated algebraic tail.
//
// Layout of one half-line integral:
//   [0, head_cut]      analytic (power-law model) or eps*f(eps)
//   [head_cut, b0]     dyadic graded panels
//   [b0, X]            half-period panels, globally adaptive bisection
//   [X, inf)           tail model: log-mapped mean part plus asymptotic
//                      integration by parts for the cos/sin parts, or an
//                      envelope bound, or a log-mapped smooth tail.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "levylab/error.hpp"

namespace levylab {

using RealFn = std::function<double(double)>;

/// Near 0 the integrand behaves like coefficient * x^exponent * ln^log_power(log_scale * x).
struct PowerHead {
  double coefficient = 0.0;
  double exponent = 0.0;
  int log_power = 0;
  double log_scale = 1.0;
};

/// For x >= tail_cut the integrand equals mean(x) + cos_amplitude(x) cos(omega x)
/// + sin_amplitude(x) sin(omega x), with smooth non-oscillating amplitudes.
struct OscillatoryTail {
  double omega = 0.0;
  RealFn mean;
  RealFn cos_amplitude;
  RealFn sin_amplitude;
};

/// |f(x)| <= coefficient * x^{-exponent} beyond tail_cut.
struct TailEnvelope {
  double coefficient = 1.0;
  double exponent = 2.0;
};

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_panels = 20000;
  std::optional<double> tail_cut;
  std::optional<double> oscillation_period;
  std::optional<TailEnvelope> envelope;
  std::optional<OscillatoryTail> oscillatory_tail;
  std::optional<PowerHead> power_head;
  std::optional<double> head_cut;
  std::vector<double> breakpoints;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels_used = 0;
  double tail_bound = 0.0;
  bool converged = true;
};

/// Integral of a power-log model over [0, eps]; requires exponent > -1.
inline double power_head_integral(const PowerHead& h, double eps) {
  double alpha = h.exponent + 1.0;
  if (!(alpha > 0.0))
    throw std::invalid_argument("power head exponent must exceed -1 for an integrable head");
  double lead = std::pow(eps, alpha);
  double lg = std::log(h.log_scale * eps);
  double acc = lead / alpha;  // I_0
  double lpow = 1.0;
  for (int m = 1; m <= h.log_power; ++m) {
    lpow *= lg;
    acc = lead * lpow / alpha - (m / alpha) * acc;
  }
  return h.coefficient * acc;
}

inline double power_head_value(const PowerHead& h, double x) {
  return h.coefficient * std::pow(x, h.exponent) * std::pow(std::log(h.log_scale * x), h.log_power);
}

namespace detail {

inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0, b = 0.0, value = 0.0, error = 0.0;
};

// QUADPACK qk15 with its error heuristic and roundoff floor.
template <class F>
Panel gk15(F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  double center = 0.5 * (a + b), half = 0.5 * (b - a), abs_half = std::abs(half);
  double fc = f(center);
  double resg = fc * wg[3], resk = fc * wgk[7], resabs = std::abs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 3; ++j) {
    int jtw = 2 * j + 1;
    double dx = half * xgk[jtw];
    double f1 = f(center - dx), f2 = f(center + dx);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += wg[j] * (f1 + f2);
    resk += wgk[jtw] * (f1 + f2);
    resabs += wgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    int jtwm1 = 2 * j;
    double dx = half * xgk[jtwm1];
    double f1 = f(center - dx), f2 = f(center + dx);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += wgk[jtwm1] * (f1 + f2);
    resabs += wgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  double reskh = resk * 0.5;
  double resasc = wgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += wgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  double result = resk * half;
  resabs *= abs_half;
  resasc *= abs_half;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > uflow / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);
  if (!std::isfinite(result) || !std::isfinite(err))
    throw QuadratureError("non-finite integrand value on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]",
                          result, std::numeric_limits<double>::infinity());
  return Panel{a, b, result, err};
}

struct AdaptiveOutcome {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
  bool converged = true;
};

inline double neumaier_sum(const std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

// Global adaptive bisection over an initial partition. `extra_value` and
// `extra_error` account for pieces integrated elsewhere (head, tail) so the
// stopping rule is relative to the whole integral.
template <class F>
AdaptiveOutcome adaptive(F& f, const std::vector<double>& nodes, const QuadratureConfig& cfg,
                         double extra_value, double extra_error) {
  std::vector<Panel> done;
  auto cmp = [](const Panel& x, const Panel& y) { return x.error < y.error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
  double total = extra_value, err = 0.0;
  int count = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i + 1] > nodes[i])) continue;
    Panel p = gk15(f, nodes[i], nodes[i + 1]);
    total += p.value;
    err += p.error;
    heap.push(p);
    ++count;
  }
  bool converged = true;
  int iter = 0;
  while (!heap.empty()) {
    double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    if (err <= std::max(target - extra_error, 0.5 * target)) break;
    if (count >= cfg.max_panels) {
      std::vector<double> vals;
      while (!heap.empty()) {
        vals.push_back(heap.top().value);
        heap.pop();
      }
      for (auto& p : done) vals.push_back(p.value);
      double best = neumaier_sum(vals) + extra_value;
      throw QuadratureError("quadrature did not converge within " + std::to_string(cfg.max_panels) +
                                " panels (error " + std::to_string(err) + ", target " +
                                std::to_string(target) + ")",
                            best, err);
    }
    Panel p = heap.top();
    heap.pop();
    double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b) || (p.b - p.a) < 1e-14 * std::abs(mid)) {
      // cannot refine further; roundoff limited
      done.push_back(p);
      converged = false;
      continue;
    }
    Panel l = gk15(f, p.a, mid), r = gk15(f, mid, p.b);
    total += l.value + r.value - p.value;
    err += l.error + r.error - p.error;
    heap.push(l);
    heap.push(r);
    ++count;
    if (++iter % 64 == 0) {
      // resync running sums against drift
      double e = 0.0;
      std::vector<double> vals;
      auto copy = heap;
      while (!copy.empty()) {
        vals.push_back(copy.top().value);
        e += copy.top().error;
        copy.pop();
      }
      for (auto& q : done) {
        vals.push_back(q.value);
        e += q.error;
      }
      total = neumaier_sum(vals) + extra_value;
      err = e;
    }
  }
  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }
  std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<double> vals;
  double e = 0.0;
  for (auto& p : done) {
    vals.push_back(p.value);
    e += p.error;
  }
  AdaptiveOutcome out;
  out.value = neumaier_sum(vals);
  out.error = e;
  out.panels = count;
  out.converged = converged || (e + extra_error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value + extra_value)));
  return out;
}

struct HeadPiece {
  double value = 0.0;
  double error = 0.0;
};

template <class F>
HeadPiece head_remainder(F& f, const QuadratureConfig& cfg, double eps) {
  if (cfg.power_head) {
    const auto& h = *cfg.power_head;
    double v = power_head_integral(h, eps);
    double model = power_head_value(h, eps);
    double actual = f(eps);
    double mismatch = model != 0.0 ? std::abs(actual / model - 1.0) : 1.0;
    if (!std::isfinite(mismatch)) mismatch = 1.0;
    return {v, std::abs(v) * mismatch + std::abs(v) * 1e-15};
  }
  double fe = f(eps);
  if (!std::isfinite(fe)) throw QuadratureError("non-finite integrand at the head cut", 0.0, 0.0);
  return {eps * fe, eps * std::abs(fe)};
}

// Dyadic nodes head_cut = b0 2^{-K}, ..., b0/2, b0.
inline std::vector<double> graded_nodes(double b0, double head_cut) {
  std::vector<double> nodes;
  int k = static_cast<int>(std::ceil(std::log2(b0 / head_cut)));
  k = std::clamp(k, 1, 1100);
  for (int i = k; i >= 1; --i) nodes.push_back(std::ldexp(b0, -i));
  nodes.push_back(b0);
  return nodes;
}

inline double default_head_cut(const QuadratureConfig& cfg, double b0) {
  double hc = cfg.head_cut ? *cfg.head_cut : (cfg.power_head ? 1e-8 * b0 : 1e-30 * b0);
  return std::clamp(hc, 1e-300, 0.5 * b0);
}

// Body nodes from lo to hi: half-period grid when a period is set, otherwise
// a few uniform subdivisions; breakpoints in (lo, hi) are always inserted.
inline std::vector<double> body_nodes(double lo, double hi, const QuadratureConfig& cfg,
                                      int fallback_divisions = 8) {
  std::vector<double> nodes{lo, hi};
  if (cfg.oscillation_period) {
    double h = 0.5 * *cfg.oscillation_period;
    double k0 = std::floor(lo / h) + 1.0;
    for (double k = k0;; k += 1.0) {
      double x = k * h;
      if (x >= hi * (1.0 - 1e-15)) break;
      nodes.push_back(x);
      if (nodes.size() > 200000) break;
    }
  } else {
    for (int i = 1; i < fallback_divisions; ++i) nodes.push_back(lo + (hi - lo) * i / fallback_divisions);
  }
  for (double bp : cfg.breakpoints)
    if (bp > lo && bp < hi) nodes.push_back(bp);
  std::sort(nodes.begin(), nodes.end());
  std::vector<double> out;
  for (double x : nodes)
    if (out.empty() || x > out.back() * (1.0 + 1e-15) + 1e-300) out.push_back(x);
  if (out.back() < hi) out.back() = hi;
  return out;
}

// Integral over [x0, inf) of g via x = x0 e^v on unit v-panels.
inline AdaptiveOutcome log_mapped_tail(const RealFn& g, double x0, const QuadratureConfig& cfg) {
  auto h = [&](double v) {
    double x = x0 * std::exp(v);
    if (!std::isfinite(x)) return 0.0;
    return g(x) * x;
  };
  QuadratureConfig local = cfg;
  local.max_panels = std::max(64, cfg.max_panels / 4);
  AdaptiveOutcome acc;
  int quiet = 0;
  for (int k = 0; k < 720; ++k) {
    std::vector<double> nodes{double(k), double(k + 1)};
    local.abs_tol = std::max(cfg.abs_tol * 1e-2, cfg.rel_tol * 1e-2 * std::abs(acc.value));
    AdaptiveOutcome piece = adaptive(h, nodes, local, 0.0, 0.0);
    acc.value += piece.value;
    acc.error += piece.error;
    acc.panels += piece.panels;
    acc.converged = acc.converged && piece.converged;
    if (std::abs(piece.value) <= 1e-3 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(acc.value))) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  return acc;
}

struct Derivs {
  double d0, d1, d2, d3;
};

inline Derivs stencil(const RealFn& a, double x) {
  double h = 0.02 * x;
  double m2 = a(x - 2 * h), m1 = a(x - h), c = a(x), p1 = a(x + h), p2 = a(x + 2 * h);
  return {c, (-p2 + 8 * p1 - 8 * m1 + m2) / (12 * h),
          (-p2 + 16 * p1 - 30 * c + 16 * m1 - m2) / (12 * h * h), (p2 - 2 * p1 + 2 * m1 - m2) / (2 * h * h * h)};
}

struct TailPiece {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

inline TailPiece oscillatory_tail(const OscillatoryTail& t, double x, const QuadratureConfig& cfg) {
  TailPiece out;
  double w = t.omega;
  if (t.mean) {
    AdaptiveOutcome m = log_mapped_tail(t.mean, x, cfg);
    out.value += m.value;
    out.error += m.error;
    out.panels += m.panels;
  }
  double cs = std::cos(w * x), sn = std::sin(w * x);
  double w2 = w * w, w3 = w2 * w, w4 = w2 * w2;
  if (t.cos_amplitude) {
    Derivs a = stencil(t.cos_amplitude, x);
    double v = -a.d0 * sn / w - a.d1 * cs / w2 + a.d2 * sn / w3 + a.d3 * cs / w4;
    out.value += v;
    out.error += std::abs(a.d3) / w4;
  }
  if (t.sin_amplitude) {
    Derivs b = stencil(t.sin_amplitude, x);
    double v = b.d0 * cs / w - b.d1 * sn / w2 - b.d2 * cs / w3 + b.d3 * sn / w4;
    out.value += v;
    out.error += std::abs(b.d3) / w4;
  }
  return out;
}

inline double envelope_bound(const TailEnvelope& e, double x) {
  if (!(e.exponent > 1.0))
    throw std::invalid_argument("tail envelope exponent must exceed 1, got " + std::to_string(e.exponent));
  return e.coefficient * std::pow(x, 1.0 - e.exponent) / (e.exponent - 1.0);
}

inline void validate(const QuadratureConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw std::invalid_argument("quadrature tolerances must be positive");
  if (cfg.max_panels < 16) throw std::invalid_argument("max_panels must be at least 16");
  if (cfg.envelope && !(cfg.envelope->exponent > 1.0))
    throw std::invalid_argument("tail envelope exponent must exceed 1, got " +
                                std::to_string(cfg.envelope->exponent));
  if (cfg.oscillation_period && !(*cfg.oscillation_period > 0.0))
    throw std::invalid_argument("oscillation period must be positive");
}

}  // namespace detail

/// Integral of f over [a, b]. When a == 0 the mesh is graded toward 0.
inline IntegralResult integrate_segment(const RealFn& f, double a, double b, const QuadratureConfig& cfg = {}) {
  detail::validate(cfg);
  if (!(b > a)) {
    if (a == b) return {};
    throw std::invalid_argument("integrate_segment needs a <= b");
  }
  std::vector<double> nodes;
  detail::HeadPiece head;
  auto fn = f;
  if (a == 0.0) {
    double b0 = b;
    if (cfg.oscillation_period) b0 = std::min(b0, 0.5 * *cfg.oscillation_period);
    for (double bp : cfg.breakpoints)
      if (bp > 0.0 && bp < b0) b0 = bp;
    nodes = detail::graded_nodes(b0, detail::default_head_cut(cfg, b0));
    head = detail::head_remainder(fn, cfg, nodes.front());
    if (b0 < b) {
      auto body = detail::body_nodes(b0, b, cfg, 4);
      nodes.insert(nodes.end(), body.begin() + 1, body.end());
    }
  } else {
    nodes = detail::body_nodes(a, b, cfg, 1);
  }
  auto out = detail::adaptive(fn, nodes, cfg, head.value, head.error);
  IntegralResult r;
  r.value = out.value + head.value;
  r.error_estimate = out.error + head.error;
  r.panels_used = out.panels;
  r.converged = out.converged;
  return r;
}

/// Integral of f over [0, inf).
inline IntegralResult integrate_halfline(const RealFn& f, const QuadratureConfig& cfg = {}) {
  detail::validate(cfg);
  auto fn = f;
  QuadratureConfig c = cfg;
  if (c.oscillatory_tail && !c.oscillation_period)
    c.oscillation_period = 2.0 * std::numbers::pi / c.oscillatory_tail->omega;
  double bp_max = 0.0;
  for (double bp : c.breakpoints) bp_max = std::max(bp_max, bp);

  double x_cut;
  if (c.tail_cut) {
    x_cut = *c.tail_cut;
  } else if (c.oscillation_period) {
    double p = *c.oscillation_period;
    x_cut = std::max(128.0 * p, 2.0 * bp_max);
    x_cut = std::ceil(x_cut / p) * p;
  } else if (c.envelope && !c.oscillatory_tail) {
    // push the cut out until the discarded tail is below abs_tol
    const auto& e = *c.envelope;
    double q = e.exponent - 1.0;
    double x_env = std::pow(e.coefficient / (q * c.abs_tol), 1.0 / q);
    x_cut = std::max({1.0, 2.0 * bp_max, std::min(x_env, 1e12)});
  } else {
    x_cut = std::max(1.0, 2.0 * bp_max);
  }
  if (!(x_cut > 0.0)) throw std::invalid_argument("tail cut must be positive");

  IntegralResult r;
  double tail_value = 0.0, tail_error = 0.0;
  int tail_panels = 0;
  if (c.oscillatory_tail) {
    auto t = detail::oscillatory_tail(*c.oscillatory_tail, x_cut, c);
    tail_value = t.value;
    tail_error = t.error;
    tail_panels = t.panels;
    r.tail_bound = t.error;
  } else if (c.envelope) {
    r.tail_bound = detail::envelope_bound(*c.envelope, x_cut);
  } else {
    auto t = detail::log_mapped_tail(fn, x_cut, c);
    tail_value = t.value;
    tail_error = t.error;
    tail_panels = t.panels;
  }

  double b0 = c.oscillation_period ? 0.5 * *c.oscillation_period : x_cut / 16.0;
  for (double bp : c.breakpoints)
    if (bp > 0.0 && bp < b0) b0 = bp;
  b0 = std::min(b0, x_cut);
  auto nodes = detail::graded_nodes(b0, detail::default_head_cut(c, b0));
  auto head = detail::head_remainder(fn, c, nodes.front());
  if (b0 < x_cut) {
    auto body = detail::body_nodes(b0, x_cut, c);
    nodes.insert(nodes.end(), body.begin() + 1, body.end());
  }
  auto out = detail::adaptive(fn, nodes, c, head.value + tail_value, head.error + tail_error);
  r.value = out.value + head.value + tail_value;
  r.error_estimate = out.error + head.error + tail_error;
  r.panels_used = out.panels + tail_panels;
  r.converged = out.converged;
  return r;
}

/// Surface measure of the unit sphere in R^n, n in {1,2,3}.
inline double sphere_measure(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
    default: throw std::invalid_argument("dimension must be 1, 2 or 3, got " + std::to_string(n));
  }
}

/// Integral over R^n of a radial function g(|x|).
inline IntegralResult integrate_radial(int n, const RealFn& g, const QuadratureConfig& cfg = {}) {
  double omega = sphere_measure(n);
  int k = n - 1;
  auto weight = [k](double rho) { return k == 0 ? 1.0 : (k == 1 ? rho : rho * rho); };
  QuadratureConfig c = cfg;
  if (c.oscillatory_tail) {
    auto& t = *c.oscillatory_tail;
    auto wrap = [weight](RealFn h) -> RealFn {
      if (!h) return h;
      return [h, weight](double x) { return weight(x) * h(x); };
    };
    t.mean = wrap(t.mean);
    t.cos_amplitude = wrap(t.cos_amplitude);
    t.sin_amplitude = wrap(t.sin_amplitude);
  }
  if (c.power_head) c.power_head->exponent += k;
  if (c.envelope) c.envelope->exponent -= k;
  auto integrand = [&g, weight](double rho) { return weight(rho) * g(rho); };
  IntegralResult r = integrate_halfline(integrand, c);
  r.value *= omega;
  r.error_estimate *= omega;
  r.tail_bound *= omega;
  return r;
}

}  // namespace levylab
