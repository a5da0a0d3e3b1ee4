#pragma once

// Vector fields V_z, V_r and V = rho_z V_z + rho_r V_r on omega^{-1}(-1/2) in the annulus chart,
// the isotopy H_t(p) = phi^V_{-t eta(p)}(p) of the attaching circles, and the tangency and
// framing checks along them.

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mfib/local/models.hpp"
#include "mfib/local/transport.hpp"

namespace mfib::local {

using Vec4 = std::array<double, 4>;  // (r, s, x, y)

inline Vec4 to_vec(const LocalPoint& p) { return {p.r, p.s, p.z.real(), p.z.imag()}; }
inline LocalPoint to_point(const Vec4& v) { return {Chart::A, v[0], v[1], {v[2], v[3]}}; }

struct TracedCurve {
  std::vector<LocalPoint> samples;  // s is kept continuous (not reduced mod 1) along the curve
  bool closed = true;
  std::map<std::string, std::vector<double>> metadata;
};

/// omega = -Re F_a.
inline double omega(const Vec4& p) {
  return -(p[0] * std::cos(2 * pi * p[1]) + p[2] * p[2] - p[3] * p[3]);
}
/// eta = Im F_a.
inline double eta(const Vec4& p) { return p[0] * std::sin(2 * pi * p[1]) + 2 * p[2] * p[3]; }

/// Partition of unity: rho_r = 1 on |z| <= 0.1, 0 on |z| >= 0.2.
inline double rho_r(const Vec4& p) { return 1.0 - smoothstep((std::hypot(p[2], p[3]) - 0.1) / 0.1); }
inline double rho_z(const Vec4& p) { return 1.0 - rho_r(p); }

inline Vec4 field_vz(const Vec4& p) {
  const double n2 = p[2] * p[2] + p[3] * p[3];
  return {0.0, 0.0, p[3] / (2 * n2), p[2] / (2 * n2)};
}

inline Vec4 field_vr(const Vec4& p) {
  return {std::sin(2 * pi * p[1]), std::cos(2 * pi * p[1]) / (2 * pi * p[0]), 0.0, 0.0};
}

/// V at p; no level-set check (used inside the integrator).
inline Vec4 field_v(const Vec4& p) {
  const double a = rho_r(p), b = 1.0 - a;
  Vec4 out{};
  if (b > 0) {
    if (p[2] == 0 && p[3] == 0) throw NumericError("flow_field: V_z evaluated at z = 0");
    const auto vz = field_vz(p);
    for (int k = 0; k < 4; ++k) out[k] += b * vz[k];
  }
  if (a > 0) {
    if (std::fabs(p[0]) < 1e-9) throw NumericError("flow_field: V_r evaluated at r = 0");
    const auto vr = field_vr(p);
    for (int k = 0; k < 4; ++k) out[k] += a * vr[k];
  }
  return out;
}

inline Vec4 flow_field(const LocalPoint& p, const NumericConfig& cfg) {
  if (p.chart != Chart::A) throw InvalidArgument("flow_field: annulus chart expected");
  const Vec4 v = to_vec(p);
  if (std::fabs(omega(v) + 0.5) > cfg.tol_geom) throw InvalidArgument("flow_field: point is not on omega^{-1}(-1/2)");
  return field_v(v);
}

/// Central-difference directional derivative of a function along a vector.
template <class F>
double directional(const F& f, const Vec4& p, const Vec4& v, double h = 1e-5) {
  Vec4 a = p, b = p;
  for (int k = 0; k < 4; ++k) {
    a[k] += h * v[k];
    b[k] -= h * v[k];
  }
  return (f(a) - f(b)) / (2 * h);
}

// ---------------------------------------------------------------------------

inline Vec4 rk4_step(const Vec4& p, double h) {
  auto add = [](const Vec4& a, const Vec4& b, double c) {
    Vec4 o{};
    for (int k = 0; k < 4; ++k) o[k] = a[k] + c * b[k];
    return o;
  };
  const auto k1 = field_v(p);
  const auto k2 = field_v(add(p, k1, h / 2));
  const auto k3 = field_v(add(p, k2, h / 2));
  const auto k4 = field_v(add(p, k3, h));
  Vec4 o{};
  for (int k = 0; k < 4; ++k) o[k] = p[k] + h / 6 * (k1[k] + 2 * k2[k] + 2 * k3[k] + k4[k]);
  return o;
}

inline Vec4 integrate_fixed(const Vec4& p, double time, int steps, std::vector<Vec4>* trail = nullptr) {
  Vec4 q = p;
  const double h = time / steps;
  for (int i = 0; i < steps; ++i) {
    q = rk4_step(q, h);
    if (trail) trail->push_back(q);
  }
  return q;
}

/// Flow of V for the given time; steps are halved until two successive endpoints agree to tol.
inline Vec4 integrate_flow(const Vec4& p, double time, const NumericConfig& cfg, std::vector<Vec4>* trail = nullptr) {
  if (time == 0) return p;
  int steps = std::max(1, static_cast<int>(std::ceil(std::fabs(time) / cfg.ode_step)));
  Vec4 prev = integrate_fixed(p, time, steps);
  for (int level = 0; level < 12; ++level) {
    steps *= 2;
    std::vector<Vec4> local;
    const Vec4 cur = integrate_fixed(p, time, steps, trail ? &local : nullptr);
    double diff = 0;
    for (int k = 0; k < 4; ++k) diff = std::max(diff, std::fabs(cur[k] - prev[k]));
    if (diff < 1e-2 * cfg.tol_geom) {
      if (trail) *trail = std::move(local);
      return cur;
    }
    prev = cur;
  }
  throw NumericError("isotopy_flow: step refinement exhausted");
}

// ---------------------------------------------------------------------------

/// The attaching circles x^2 + cos^2(2 pi s) = eps, y = 0, r = cos(2 pi s), s in (0,1/2) and (1/2,1).
inline std::pair<TracedCurve, TracedCurve> attach_circles(double eps, int samples = 512) {
  if (!(eps > 0 && eps < 1)) throw InvalidArgument("attach_circles: eps must lie in (0,1)");
  if (samples < 8) throw InvalidArgument("attach_circles: too few samples");
  TracedCurve c1, c2;
  const double a = std::sqrt(eps);
  for (int k = 0; k < samples; ++k) {
    const double phi = 2 * pi * k / samples;
    const double r = a * std::cos(phi), x = a * std::sin(phi);
    const double s1 = std::acos(r) / (2 * pi);
    for (auto [c, s] : {std::pair{&c1, s1}, std::pair{&c2, 1.0 - s1}}) {
      c->samples.push_back({Chart::A, r, s, {x, 0.0}});
      c->metadata["eta"].push_back(r * std::sin(2 * pi * s));
      c->metadata["phi"].push_back(phi);
    }
  }
  return {c1, c2};
}

/// Number of points of a sampled circle with eta = u (sign changes of eta - u plus exact hits).
inline int level_crossings(const TracedCurve& c, double u, double tol = 1e-12) {
  const auto& e = c.metadata.at("eta");
  int hits = 0;
  const std::size_t n = e.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = e[i] - u, b = e[(i + 1) % n] - u;
    if (std::fabs(a) <= tol) {
      ++hits;
      continue;
    }
    if (std::fabs(b) > tol && (a < 0) != (b < 0)) ++hits;
  }
  return hits;
}

struct FlowReport {
  double max_v_omega = 0;      // |V(omega)|
  double max_v_eta_error = 0;  // |V(eta) - 1|
  double max_decay_error = 0;  // |eta(H_t p) - (1-t) eta(p)|
  double max_omega_drift = 0;  // |omega(H_t p) + 1/2|
  double max_level_error = 0;  // |F_a(H_1 p) - 1/2|
  double max_real_drift = 0;   // drift of Re(Gamma) along trajectories starting in supp(rho_r)
  int flow_points = 0;
};

inline void accumulate_field_checks(const Vec4& q, FlowReport& rep) {
  const auto v = field_v(q);
  rep.max_v_omega = std::max(rep.max_v_omega, std::fabs(directional(omega, q, v)));
  rep.max_v_eta_error = std::max(rep.max_v_eta_error, std::fabs(directional(eta, q, v) - 1.0));
  ++rep.flow_points;
}

/// H_t applied to every sample; `report` (optional) collects the invariants along the way.
inline TracedCurve isotopy_flow(const TracedCurve& c, double t, const NumericConfig& cfg, FlowReport* report = nullptr) {
  if (t < 0 || t > 1) throw InvalidArgument("isotopy_flow: t must lie in [0,1]");
  TracedCurve out;
  out.closed = c.closed;
  for (const auto& p : c.samples) {
    const Vec4 v = to_vec(p);
    if (std::fabs(omega(v) + 0.5) > cfg.tol_geom) throw InvalidArgument("isotopy_flow: curve is not on omega^{-1}(-1/2)");
    const double e0 = eta(v);
    std::vector<Vec4> trail;
    const Vec4 q = integrate_flow(v, -t * e0, cfg, report ? &trail : nullptr);
    out.samples.push_back(to_point(q));
    out.metadata["eta"].push_back(eta(q));
    out.metadata["eta0"].push_back(e0);
    if (report) {
      accumulate_field_checks(v, *report);
      const std::size_t stride = std::max<std::size_t>(1, trail.size() / 8);
      for (std::size_t i = 0; i < trail.size(); i += stride) accumulate_field_checks(trail[i], *report);
      report->max_decay_error = std::max(report->max_decay_error, std::fabs(eta(q) - (1 - t) * e0));
      report->max_omega_drift = std::max(report->max_omega_drift, std::fabs(omega(q) + 0.5));
      if (rho_r(v) > 0) {
        const double re0 = v[0] * std::cos(2 * pi * v[1]);
        for (const auto& w : trail)
          report->max_real_drift = std::max(report->max_real_drift, std::fabs(w[0] * std::cos(2 * pi * w[1]) - re0));
      }
      if (t == 1.0) {
        const cplx fa = eval_local_model(Model::Fa, to_point(q));
        report->max_level_error = std::max(report->max_level_error, std::abs(fa - 0.5));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct FramingReport {
  double max_identity_error_r = 0;  // |V(r - cos 2 pi s) - 2 rho_r sin 2 pi s|
  double max_identity_error_y = 0;  // |V(y) - x rho_z / (2 (x^2 + y^2))|
  double min_tangent_margin = 0;    // sine of the angle between the curve direction and V
  double min_dy_independence = 0;   // |sine| of the angle between V and d_y in the normal plane
  double min_dy_nonopposite = 0;    // 1 + cos of that angle (0 means antiparallel)
  int relative_winding = 0;         // turns of d_y relative to V in the normal plane
  double winding_raw = 0;
};

namespace detail {

inline double dot4(const Vec4& a, const Vec4& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

inline double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  const std::array<Vec4, 4> m{a, b, c, d};
  double acc = 0;
  // Leibniz expansion over the 24 permutations
  std::array<int, 4> p{0, 1, 2, 3};
  auto parity = [](const std::array<int, 4>& q) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inv += q[i] > q[j];
    return inv % 2 ? -1.0 : 1.0;
  };
  do {
    acc += parity(p) * m[0][p[0]] * m[1][p[1]] * m[2][p[2]] * m[3][p[3]];
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

inline Vec4 reject(Vec4 v, const Vec4& unit) {
  const double c = dot4(v, unit);
  for (int k = 0; k < 4; ++k) v[k] -= c * unit[k];
  return v;
}

inline Vec4 unit(Vec4 v) {
  const double n = std::sqrt(dot4(v, v));
  for (auto& x : v) x /= n;
  return v;
}

}  // namespace detail

/// Checks along a closed sampled circle on omega^{-1}(-1/2); directions by periodic 4th-order differences.
inline FramingReport tangency_framing_check(const TracedCurve& c, const NumericConfig& cfg) {
  (void)cfg;
  using detail::dot4;
  const auto& pts = c.samples;
  const std::size_t n = pts.size();
  if (n < 8 || !c.closed) throw InvalidArgument("tangency_framing_check: closed curve with >= 8 samples expected");
  FramingReport rep;
  rep.min_tangent_margin = rep.min_dy_independence = rep.min_dy_nonopposite = 1e300;
  double total = 0, prev_angle = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    const Vec4 p = to_vec(pts[i % n]);
    auto at = [&](long k) { return to_vec(pts[static_cast<std::size_t>((static_cast<long>(i) + k + 4 * static_cast<long>(n)) % static_cast<long>(n))]); };
    Vec4 tan{};
    const Vec4 m2 = at(-2), m1 = at(-1), p1 = at(1), p2 = at(2);
    for (int k = 0; k < 4; ++k) tan[k] = (m2[k] - 8 * m1[k] + 8 * p1[k] - p2[k]) / 12.0;
    const Vec4 v = field_v(p);
    const double two_pi_s = 2 * pi * p[1];
    const double vr_identity = v[0] + 2 * pi * std::sin(two_pi_s) * v[1];
    if (i < n) {
      rep.max_identity_error_r =
          std::max(rep.max_identity_error_r, std::fabs(vr_identity - 2 * rho_r(p) * std::sin(two_pi_s)));
      rep.max_identity_error_y = std::max(
          rep.max_identity_error_y, std::fabs(v[3] - p[2] * rho_z(p) / (2 * (p[2] * p[2] + p[3] * p[3]))));
      const double tv = dot4(tan, v), tt = dot4(tan, tan), vv = dot4(v, v);
      rep.min_tangent_margin = std::min(rep.min_tangent_margin, std::sqrt(std::max(0.0, 1 - tv * tv / (tt * vv))));
    }
    // normal plane of the curve inside the level set
    const Vec4 grad{-std::cos(two_pi_s), 2 * pi * p[0] * std::sin(two_pi_s), -2 * p[2], 2 * p[3]};
    const Vec4 nrm = detail::unit(grad);
    const Vec4 tu = detail::unit(detail::reject(tan, nrm));
    const Vec4 vp = detail::reject(detail::reject(v, nrm), tu);
    const Vec4 dy = detail::reject(detail::reject(Vec4{0, 0, 0, 1}, nrm), tu);
    const double det = detail::det4(nrm, tu, vp, dy), dt = dot4(vp, dy);
    const double norm = std::sqrt(dot4(vp, vp) * dot4(dy, dy));
    const double angle = std::atan2(det, dt);
    if (i < n) {
      rep.min_dy_independence = std::min(rep.min_dy_independence, std::fabs(det) / norm);
      rep.min_dy_nonopposite = std::min(rep.min_dy_nonopposite, 1 + dt / norm);
    }
    if (i > 0) {
      double d = angle - prev_angle;
      while (d > pi) d -= 2 * pi;
      while (d < -pi) d += 2 * pi;
      total += d;
    }
    prev_angle = angle;
  }
  rep.winding_raw = total / (2 * pi);
  rep.relative_winding = static_cast<int>(std::lround(rep.winding_raw));
  return rep;
}

}  // namespace mfib::local
