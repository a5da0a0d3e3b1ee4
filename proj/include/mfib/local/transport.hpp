#pragma once

// Explicit trivialization of F_m over the unit circle: the phase integral s~, the radius
// r~ and the transported point Lambda_t on the regular fiber F_m^{-1}(1).

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "mfib/local/models.hpp"

namespace mfib::local {

/// 6u^5 - 15u^4 + 10u^3 clamped to [0,1]: C^2 ramp from 0 to 1.
inline double smoothstep(double u) {
  if (u <= 0) return 0.0;
  if (u >= 1) return 1.0;
  return u * u * u * (u * (6 * u - 15) + 10);
}

/// Monotone plateau profile: 1 on [0, inner], 0 on [outer, inf).
struct BumpProfile {
  double inner = 4.0 / 3.0;
  double outer = 5.0 / 3.0;

  BumpProfile() = default;
  BumpProfile(double in, double out) : inner(in), outer(out) {
    if (!(0 < inner && inner < outer)) throw InvalidArgument("BumpProfile: need 0 < inner < outer");
  }
  double operator()(double r) const { return 1.0 - smoothstep((r - inner) / (outer - inner)); }
};

inline cplx transport_w(double t, cplx z, const BumpProfile& rho = {}) {
  const double q = rho(std::abs(z));
  return std::polar(1.0, 2 * pi * t) - std::polar(1.0, 2 * pi * q * t) * z * z;
}

inline cplx transport_w_dt(double t, cplx z, const BumpProfile& rho = {}) {
  const double q = rho(std::abs(z));
  const cplx i2pi(0, 2 * pi);
  return i2pi * std::polar(1.0, 2 * pi * t) - i2pi * q * std::polar(1.0, 2 * pi * q * t) * z * z;
}

struct QuadratureResult {
  double value = 0;
  double error = 0;
  int panels = 0;
};

namespace detail {

inline constexpr std::array<double, 4> gl8_nodes{0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                                 0.9602898564975363};
inline constexpr std::array<double, 4> gl8_weights{0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                                   0.1012285362903763};

template <class F>
double gauss_legendre(const F& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double acc = 0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h, half = 0.5 * h;
    for (std::size_t k = 0; k < gl8_nodes.size(); ++k)
      acc += gl8_weights[k] * half * (f(mid - half * gl8_nodes[k]) + f(mid + half * gl8_nodes[k]));
  }
  return acc;
}

}  // namespace detail

/// (1/pi) * integral_0^t Im(w_t / w) dt by composite 8-point Gauss-Legendre with panel doubling.
inline QuadratureResult phase_integral(double t, cplx z, const NumericConfig& cfg, const BumpProfile& rho = {}) {
  if (std::abs(z * z - 1.0) < 1e-12) throw NumericError("phase_integral: w vanishes at z = +-1");
  auto f = [&](double u) { return std::imag(transport_w_dt(u, z, rho) / transport_w(u, z, rho)) / pi; };
  int panels = cfg.quadrature_points;
  double prev = detail::gauss_legendre(f, 0.0, t, panels);
  for (int iter = 0; iter < 14; ++iter) {
    panels *= 2;
    const double cur = detail::gauss_legendre(f, 0.0, t, panels);
    const double err = std::fabs(cur - prev);
    if (err < 1e-13 * std::max(1.0, std::fabs(cur))) return {cur, err, panels};
    prev = cur;
  }
  throw NumericError("phase_integral: quadrature did not converge (z too close to +-1)");
}

/// Independent oracle: unwrapped argument increments of w along a fine t-grid.
inline double phase_by_argument_tracking(double t, cplx z, int steps = 20000, const BumpProfile& rho = {}) {
  double total = 0;
  cplx prev = transport_w(0.0, z, rho);
  for (int k = 1; k <= steps; ++k) {
    const cplx cur = transport_w(t * k / steps, z, rho);
    total += std::arg(cur / prev);
    prev = cur;
  }
  return total / pi;
}

inline double s_tilde(double t, double s, cplx z, const NumericConfig& cfg, const BumpProfile& rho = {}) {
  if (std::abs(z) <= rho.inner) return s + 2 * t;
  return s + phase_integral(t, z, cfg, rho).value;
}

/// Case formula; r must satisfy |r| = |1 - z^2|.
inline double r_tilde(double t, double r, cplx z, const BumpProfile& rho = {}) {
  if (std::abs(z) < rho.inner) return r;
  const double m = std::abs(transport_w(t, z, rho));
  return r > 0 ? m : -m;
}

/// The point of F_m^{-1}(1) over z (beta_1^{-1}), represented with r > 0.
inline LocalPoint fiber_point_over(cplx z) {
  const cplx base = 1.0 - z * z;
  if (std::abs(base) == 0) throw InvalidArgument("fiber_point_over: z = +-1 lies over the critical circle");
  return normalize({Chart::M, std::abs(base), std::arg(base) / pi, z});
}

inline LocalPoint transport(double t, const LocalPoint& p, const NumericConfig& cfg, const BumpProfile& rho = {}) {
  const double q = rho(std::abs(p.z));
  return {Chart::M, r_tilde(t, p.r, p.z, rho), s_tilde(t, p.s, p.z, cfg, rho), std::polar(1.0, pi * q * t) * p.z};
}

struct TransportReport {
  int samples = 0;
  double max_shift_error = 0;    // |s~(1,s,z) - (s+2)| for |z| <= inner, by quadrature
  double max_fiber_error = 0;    // |F_m(Lambda_t p) - e^{2 pi i t}|
  double max_rotation_error = 0; // distance of Lambda_1 p to beta_1^{-1}(e^{i pi rho'} z)
  double max_fixed_error = 0;    // distance of Lambda_1 p to p for |z| >= outer
  double max_oracle_error = 0;   // quadrature vs argument tracking, |z| outside [0.9, 1.1]
};

inline TransportReport monodromy_transport(const NumericConfig& cfg, int samples = 1000, const BumpProfile& rho = {}) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> rad(0.02, 2.0), ang(0.0, 2 * pi);
  TransportReport rep;
  while (rep.samples < samples) {
    const cplx z = std::polar(rad(rng), ang(rng));
    if (std::abs(z - 1.0) < 0.05 || std::abs(z + 1.0) < 0.05) continue;
    ++rep.samples;
    const LocalPoint p = fiber_point_over(z);
    const double az = std::abs(z);
    if (az <= rho.inner)
      rep.max_shift_error = std::max(rep.max_shift_error, std::fabs(phase_integral(1.0, z, cfg, rho).value - 2.0));
    if (az < 0.9 || az > 1.1) {
      const double quad = phase_integral(1.0, z, cfg, rho).value;
      rep.max_oracle_error = std::max(rep.max_oracle_error, std::fabs(quad - phase_by_argument_tracking(1.0, z, 20000, rho)));
    }
    for (double t : {0.25, 0.5, 0.75, 1.0}) {
      const auto img = transport(t, p, cfg, rho);
      rep.max_fiber_error =
          std::max(rep.max_fiber_error, std::abs(eval_local_model(Model::Fm, img) - std::polar(1.0, 2 * pi * t)));
    }
    const auto img = transport(1.0, p, cfg, rho);
    const auto expect = fiber_point_over(std::polar(1.0, pi * rho(az)) * z);
    rep.max_rotation_error = std::max(rep.max_rotation_error, chart_distance(img, expect));
    if (az >= rho.outer) rep.max_fixed_error = std::max(rep.max_fixed_error, chart_distance(img, p));
  }
  return rep;
}

}  // namespace mfib::local
