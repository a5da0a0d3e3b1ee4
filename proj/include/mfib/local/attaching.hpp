#pragma once

// Homology classes of the isotoped attaching circles in the fiber F_a^{-1}(1/2), a double cover of the
// annulus A branched at [1/2, 0]_a and [-1/2, 1/2]_a. Classes are read off from signed crossings with
// lifts of the lines s = 0.2 and s = 0.7, in the basis
//   Y+, Y-  lifts of the circle r = 0.15 (increasing s) on the sheets z = +-sqrt(1/2 - zeta),
//   K       lift of the arc r = 1/2 - t, s = t/2 between the branch points (+ sheet forward, - sheet back).

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "mfib/local/flow.hpp"

namespace mfib::local {

inline constexpr std::array<double, 2> reference_lines{0.2, 0.7};
inline const std::array<LocalPoint, 2> fiber_branch_points{LocalPoint{Chart::A, 0.5, 0.0, {}},
                                                          LocalPoint{Chart::A, -0.5, 0.5, {}}};

/// Principal square root sheet of F_a^{-1}(1/2) over (r, s).
inline cplx principal_sheet(double r, double s) { return std::sqrt(cplx(0.5) - std::polar(r, 2 * pi * s)); }

/// A class in H_1(F_a^{-1}(1/2)) in the basis (Y+, Y-, K).
struct FiberClass {
  std::array<long long, 3> coords{};
  bool operator==(const FiberClass&) const = default;
  bool is_zero() const { return coords == std::array<long long, 3>{}; }
  /// Image in the closed torus fiber, where Y- = -Y+: (Y+ - Y-, K).
  std::array<long long, 2> torus() const { return {coords[0] - coords[1], coords[2]}; }
};

inline std::string to_string(const FiberClass& c) {
  return "(" + std::to_string(c.coords[0]) + "," + std::to_string(c.coords[1]) + "," + std::to_string(c.coords[2]) +
         ")";
}

// ---------------------------------------------------------------------------
// Test and basis curves on F_a^{-1}(1/2); z follows the sheet continuously.

namespace detail {

inline TracedCurve lift_path(const std::vector<std::pair<double, double>>& rs, cplx start_sheet, bool closed) {
  TracedCurve c;
  c.closed = closed;
  cplx prev = start_sheet;
  for (const auto& [r, s] : rs) {
    cplx z = principal_sheet(r, s);
    if (std::abs(z - prev) > std::abs(-z - prev)) z = -z;
    c.samples.push_back({Chart::A, r, s, z});
    prev = z;
  }
  return c;
}

}  // namespace detail

/// Y+ (sheet = +1) or Y- (sheet = -1).
inline TracedCurve core_lift(int sheet, int n = 512) {
  std::vector<std::pair<double, double>> rs;
  for (int k = 0; k < n; ++k) rs.emplace_back(0.15, static_cast<double>(k) / n);
  return detail::lift_path(rs, double(sheet) * principal_sheet(0.15, 0.0), true);
}

inline TracedCurve branch_cut_lift(int n = 512) {
  TracedCurve c;
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    const double r = 0.5 - t, s = t / 2;
    c.samples.push_back({Chart::A, r, s, principal_sheet(r, s)});
  }
  for (int k = n - 1; k >= 1; --k) {
    const double t = static_cast<double>(k) / n;
    const double r = 0.5 - t, s = t / 2;
    c.samples.push_back({Chart::A, r, s, -principal_sheet(r, s)});
  }
  return c;
}

/// Lift of the circle of radius rad around (r0, s0) in the (r, s) plane.
inline TracedCurve circle_lift(double r0, double s0, double rad, int n = 512) {
  std::vector<std::pair<double, double>> rs;
  for (int k = 0; k < n; ++k) {
    const double a = 2 * pi * k / n;
    rs.emplace_back(r0 + rad * std::cos(a), s0 + rad * std::sin(a));
  }
  const cplx start = principal_sheet(rs.front().first, rs.front().second);
  auto c = detail::lift_path(rs, start, true);
  if (std::abs(c.samples.back().z - start) > std::abs(c.samples.back().z + start))
    throw InvalidArgument("circle_lift: circle encloses one branch point, its lift is not closed");
  return c;
}

/// Boundary-parallel curve: the connected lift of r = rad (|rad| > 1/2), traversed twice in s.
inline TracedCurve boundary_lift(double rad, int n = 1024) {
  if (std::fabs(rad) <= 0.5) throw InvalidArgument("boundary_lift: |r| must exceed 1/2");
  std::vector<std::pair<double, double>> rs;
  for (int k = 0; k < n; ++k) rs.emplace_back(rad, 2.0 * k / n);
  return detail::lift_path(rs, principal_sheet(rad, 0.0), true);
}

// ---------------------------------------------------------------------------

/// Signed crossings with the four reference lifts (s0 = 0.2, 0.7) x (sheet +, -), sign = det[c', (1,0)].
inline std::array<long long, 4> reference_counts(const TracedCurve& c) {
  std::array<long long, 4> counts{};
  const auto& p = c.samples;
  const std::size_t n = p.size();
  if (n < 2) throw InvalidArgument("reference_counts: curve needs at least two samples");
  const std::size_t segs = c.closed ? n : n - 1;
  for (std::size_t i = 0; i < segs; ++i) {
    const auto& a = p[i];
    auto b = p[(i + 1) % n];
    if (c.closed && i + 1 == n) {
      // close the loop across the period of s
      const double shift = std::round(a.s - b.s);
      b.s += shift;
    }
    for (std::size_t l = 0; l < 2; ++l) {
      const double s0 = reference_lines[l];
      const double ka = std::floor(a.s - s0), kb = std::floor(b.s - s0);
      if (ka == kb) continue;
      if (std::fabs(ka - kb) > 1) throw NumericError("reference_counts: ambiguous crossing, sampling too coarse");
      const double target = s0 + std::max(ka, kb);
      const double lam = (target - a.s) / (b.s - a.s);
      const double r = a.r + lam * (b.r - a.r);
      const cplx z = a.z + lam * (b.z - a.z);
      const cplx ref = principal_sheet(r, s0);
      const double dp = std::abs(z - ref), dm = std::abs(z + ref);
      if (std::min(dp, dm) > 0.25 * std::abs(ref))
        throw NumericError("reference_counts: ambiguous sheet at crossing, sampling too coarse");
      const long long sign = b.s > a.s ? -1 : 1;
      counts[2 * l + (dp <= dm ? 0 : 1)] += sign;
    }
  }
  return counts;
}

/// Rows: Y+, Y-, K; columns: the first three reference lifts. Unimodular by construction.
inline std::array<std::array<long long, 3>, 3> reference_pairing() {
  const std::array<TracedCurve, 3> basis{core_lift(1), core_lift(-1), branch_cut_lift()};
  std::array<std::array<long long, 3>, 3> m{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto cnt = reference_counts(basis[i]);
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = cnt[j];
  }
  return m;
}

namespace detail {

inline long long det3(const std::array<std::array<long long, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace detail

/// Solves c P = counts over the basis; the fourth count is a consistency check.
inline FiberClass fiber_class(const TracedCurve& curve) {
  static const auto pm = reference_pairing();
  static const std::array<long long, 3> col4 = [] {
    const std::array<TracedCurve, 3> basis{core_lift(1), core_lift(-1), branch_cut_lift()};
    std::array<long long, 3> v{};
    for (std::size_t i = 0; i < 3; ++i) v[i] = reference_counts(basis[i])[3];
    return v;
  }();
  const long long det = detail::det3(pm);
  if (det != 1 && det != -1) throw CheckFailure("reference pairing is not unimodular (det " + std::to_string(det) + ")");
  const auto cnt = reference_counts(curve);
  // Cramer on the transposed system P^T c = counts
  FiberClass out;
  for (std::size_t k = 0; k < 3; ++k) {
    auto mk = pm;
    for (std::size_t j = 0; j < 3; ++j) mk[k][j] = cnt[j];
    out.coords[k] = detail::det3(mk) / det;
  }
  long long pred = 0;
  for (std::size_t i = 0; i < 3; ++i) pred += out.coords[i] * col4[i];
  if (pred != cnt[3]) throw CheckFailure("fiber_class: inconsistent crossing with the fourth reference lift");
  return out;
}

/// Algebraic intersection of two sampled closed curves on the fiber (crossings in (r, s) on matching sheets).
inline long long intersection_number(const TracedCurve& a, const TracedCurve& b) {
  auto segments = [](const TracedCurve& c) {
    std::vector<std::pair<LocalPoint, LocalPoint>> out;
    const std::size_t n = c.samples.size();
    for (std::size_t i = 0; i < (c.closed ? n : n - 1); ++i) {
      auto q = c.samples[(i + 1) % n];
      if (i + 1 == n) q.s += std::round(c.samples[i].s - q.s);
      out.emplace_back(c.samples[i], q);
    }
    return out;
  };
  const auto sa = segments(a), sb = segments(b);
  long long total = 0;
  for (const auto& [p0, p1] : sa)
    for (const auto& [q0b, q1b] : sb)
      for (int m = -3; m <= 3; ++m) {
        const double q0s = q0b.s + m, q1s = q1b.s + m;
        const double dr = p1.r - p0.r, ds = p1.s - p0.s, er = q1b.r - q0b.r, es = q1s - q0s;
        const double den = dr * es - ds * er;
        if (den == 0) continue;
        const double fr = q0b.r - p0.r, fs = q0s - p0.s;
        const double lam = (fr * es - fs * er) / den, mu = (fr * ds - fs * dr) / den;
        if (lam < 0 || lam >= 1 || mu < 0 || mu >= 1) continue;
        const cplx za = p0.z + lam * (p1.z - p0.z), zb = q0b.z + mu * (q1b.z - q0b.z);
        if (std::abs(za - zb) >= std::abs(za + zb)) continue;
        total += den > 0 ? 1 : -1;
      }
  return total;
}

/// Intersection form on the basis (Y+, Y-, K) by polygonal counts.
inline std::array<std::array<long long, 3>, 3> basis_intersection_form() {
  // the K loop is shifted off the branch points so it meets the other curves transversally
  const std::array<TracedCurve, 3> basis{core_lift(1, 700), core_lift(-1, 700), branch_cut_lift(613)};
  std::array<std::array<long long, 3>, 3> q{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) q[i][j] = intersection_number(basis[i], basis[j]);
  return q;
}

inline long long pairing(const FiberClass& x, const FiberClass& y) {
  static const auto q = basis_intersection_form();
  long long acc = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) acc += x.coords[i] * q[i][j] * y.coords[j];
  return acc;
}

// ---------------------------------------------------------------------------

struct AttachingResult {
  FiberClass cls;
  TracedCurve curve;  // H_1(C_i) on F_a^{-1}(1/2)
  FlowReport flow;
  int samples = 0;
};

/// Class of H_1(C_i), i in {1, 2}; sampling is doubled on ambiguous crossings.
inline AttachingResult attaching_class(int i, const NumericConfig& cfg) {
  if (i != 1 && i != 2) throw InvalidArgument("attaching_class: index must be 1 or 2");
  cfg.validate();
  int n = std::max(256, 2 * cfg.grid);
  for (int attempt = 0; attempt < 4; ++attempt, n *= 2) {
    auto circles = attach_circles(0.5, n);
    AttachingResult res;
    res.samples = n;
    res.curve = isotopy_flow(i == 1 ? circles.first : circles.second, 1.0, cfg, &res.flow);
    try {
      res.cls = fiber_class(res.curve);
      return res;
    } catch (const NumericError&) {
    }
  }
  throw NumericError("attaching_class: crossings stay ambiguous after refinement");
}

// ---------------------------------------------------------------------------
// Windings in A, embedded in the plane by (r, s) -> exp(r + 2 pi i s).

inline cplx annulus_embed(double r, double s) { return std::exp(cplx(r, 2 * pi * s)); }

struct WindingReport {
  std::vector<std::array<long long, 2>> around_branch;  // per curve: (branch point 1, branch point 2)
  std::vector<long long> around_hole;                   // per curve: net turns in s
};

inline double distance_to_segment(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  double t = len2 > 0 ? std::real((p - a) * std::conj(d)) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

inline WindingReport project_and_wind(const std::vector<TracedCurve>& curves, const NumericConfig& cfg) {
  WindingReport rep;
  const double tol = 10 * cfg.tol_geom;
  for (const auto& c : curves) {
    if (!c.closed || c.samples.size() < 3) throw InvalidArgument("project_and_wind: closed curves expected");
    std::array<long long, 2> w{};
    for (std::size_t b = 0; b < 2; ++b) {
      const auto& bp = fiber_branch_points[b];
      const cplx q = annulus_embed(bp.r, bp.s);
      double total = 0;
      const std::size_t n = c.samples.size();
      for (std::size_t i = 0; i < n; ++i) {
        const auto& u = c.samples[i];
        const auto& v = c.samples[(i + 1) % n];
        const cplx pu = annulus_embed(u.r, u.s), pv = annulus_embed(v.r, v.s);
        if (distance_to_segment(q, pu, pv) < tol)
          throw InvalidArgument("project_and_wind: curve passes through branch point " + std::to_string(b + 1));
        total += std::arg((pv - q) / (pu - q));
      }
      w[b] = std::lround(total / (2 * pi));
    }
    rep.around_branch.push_back(w);
    const double ds = c.samples.back().s - c.samples.front().s;
    const double last_step = c.samples.front().s - c.samples.back().s;
    rep.around_hole.push_back(std::lround(ds + (last_step - std::round(last_step))));
  }
  return rep;
}

/// The projection of H_1(C_i) is one arc between the branch points, traversed on both sheets.
struct ArcReport {
  std::array<double, 2> start{}, end{};  // (r, s) of the arc endpoints
  std::array<int, 2> endpoint_branch{};  // indices (1-based) of the branch points hit
  double endpoint_distance = 0;          // max distance of the endpoints to their branch points
  double sheet_symmetry = 0;             // mismatch between the sample at phi and minus the one at -phi
  double delta_s = 0;                    // net change of s along the arc
};

inline ArcReport arc_report(const TracedCurve& c) {
  const std::size_t n = c.samples.size();
  if (n < 8 || n % 2) throw InvalidArgument("arc_report: even sample count expected");
  ArcReport rep;
  const auto& a = c.samples.front();
  const auto& b = c.samples[n / 2];
  rep.start = {a.r, a.s};
  rep.end = {b.r, b.s};
  for (std::size_t e = 0; e < 2; ++e) {
    const auto& p = e == 0 ? a : b;
    int best = 0;
    double dist = 1e300;
    for (std::size_t k = 0; k < 2; ++k) {
      const double d = chart_distance(p, fiber_branch_points[k]);
      if (d < dist) {
        dist = d;
        best = static_cast<int>(k) + 1;
      }
    }
    rep.endpoint_branch[e] = best;
    rep.endpoint_distance = std::max(rep.endpoint_distance, dist);
  }
  for (std::size_t k = 1; k < n / 2; ++k) {
    const auto& p = c.samples[k];
    const auto& q = c.samples[n - k];
    rep.sheet_symmetry = std::max(rep.sheet_symmetry, std::hypot(p.r - q.r, p.s - q.s) + std::abs(p.z + q.z));
  }
  rep.delta_s = b.s - a.s;
  return rep;
}

}  // namespace mfib::local
