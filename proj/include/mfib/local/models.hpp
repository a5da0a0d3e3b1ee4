#pragma once

// Local models F_m (Moebius band chart), F_a (annulus chart) and the stable perturbation
// F_eps, with branch data of the first-factor projection and the convexity estimate used
// to identify fibers.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "mfib/error.hpp"
#include "mfib/local/config.hpp"

namespace mfib::local {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

enum class Chart { M, A };
enum class Model { Fm, Fa, Feps };

inline Chart chart_of(Model m) { return m == Model::Fa ? Chart::A : Chart::M; }
inline const char* to_string(Model m) { return m == Model::Fm ? "Fm" : m == Model::Fa ? "Fa" : "Feps"; }

struct LocalPoint {
  Chart chart = Chart::M;
  double r = 0;
  double s = 0;
  cplx z{};
};

/// Brings s into [0,1); on the M chart every unit shift flips the sign of r.
inline LocalPoint normalize(LocalPoint p) {
  double k = std::floor(p.s);
  p.s -= k;
  if (p.s >= 1.0) {  // rounding of tiny negative s
    p.s = 0.0;
    k += 1.0;
  }
  if (p.chart == Chart::M && std::fmod(std::fabs(k), 2.0) == 1.0) p.r = -p.r;
  return p;
}

/// Distance between points modulo the chart identification (same chart required).
inline double chart_distance(const LocalPoint& a, const LocalPoint& b) {
  if (a.chart != b.chart) throw InvalidArgument("chart_distance: different charts");
  const auto p = normalize(a), q = normalize(b);
  double best = std::hypot(p.r - q.r, p.s - q.s);
  for (int shift : {-1, 1}) {
    const double r = (p.chart == Chart::M) ? -q.r : q.r;
    best = std::min(best, std::hypot(p.r - r, p.s - (q.s + shift)));
  }
  return std::hypot(best, std::abs(p.z - q.z));
}

template <class T>
struct Value2 {
  T re;
  T im;
};

/// Real form of the models in (r, s, x, y); templated so dual numbers can flow through.
template <class T>
Value2<T> eval_real(Model m, const T& r, const T& s, const T& x, const T& y, double eps = 0.0) {
  using std::cos;
  using std::sin;
  const double k = (m == Model::Fa) ? 2 * pi : pi;
  Value2<T> out{r * cos(k * s) + x * x - y * y, r * sin(k * s) + 2.0 * x * y};
  if (m == Model::Feps) {
    out.re = out.re + eps * cos(4 * pi * s);
    out.im = out.im + eps * sin(4 * pi * s);
  }
  return out;
}

inline cplx eval_local_model(Model m, const LocalPoint& p, double eps = 0.0) {
  if (p.chart != chart_of(m))
    throw InvalidArgument(std::string("eval_local_model: ") + to_string(m) + " needs the " +
                          (chart_of(m) == Chart::A ? "A" : "M") + " chart");
  const auto v = eval_real(m, p.r, p.s, p.z.real(), p.z.imag(), eps);
  return {v.re, v.im};
}

// ---------------------------------------------------------------------------
// Branch points of the first-factor projection of a regular fiber: the points with z = 0.

inline std::vector<LocalPoint> branch_points(Model m, cplx w, double tol = 1e-9) {
  if (m == Model::Feps) throw InvalidArgument("branch_points: defined for Fm and Fa only");
  if (std::abs(w) < tol) throw InvalidArgument("branch_points: w = 0 is the singular value");
  const Chart ch = chart_of(m);
  const double k = (m == Model::Fa) ? 2 * pi : pi;
  const double rho = std::abs(w), phase = std::arg(w) / k;
  // both signs of r and a window of covering translates, then canonicalize and dedupe
  std::vector<LocalPoint> out;
  const double half_turn = (m == Model::Fa) ? 0.5 : 1.0;
  for (int sign : {1, -1})
    for (int n = -2; n <= 2; ++n) {
      LocalPoint p{ch, sign * rho, phase + n * (2 * half_turn) + (sign < 0 ? half_turn : 0.0), {}};
      if (std::abs(eval_local_model(m, p) - w) > tol * std::max(1.0, rho)) continue;
      p = normalize(p);
      const bool seen =
          std::any_of(out.begin(), out.end(), [&](const LocalPoint& q) { return chart_distance(p, q) < tol; });
      if (!seen) out.push_back(p);
    }
  return out;
}

/// Riemann-Hurwitz for a double cover of the Moebius band / annulus (both chi = 0).
inline int fiber_euler(Model m, cplx w) { return 2 * 0 - static_cast<int>(branch_points(m, w).size()); }

inline int riemann_hurwitz_double(int base_chi, int branch_count) { return 2 * base_chi - branch_count; }

// ---------------------------------------------------------------------------

struct ConvexityReport {
  bool convex = false;
  double min_margin = 0;
  double bound = 0;  // 1 - eps / (|eta| - eps)
};

/// Grid check of Re(1 + xi q''/q') > 0 on the closed disk of radius eps for q(xi) = w - (+-eta + xi)^2.
inline ConvexityReport convexity_check(cplx w, double eps, const NumericConfig& cfg) {
  if (std::abs(w) == 0) throw InvalidArgument("convexity_check: w must be nonzero");
  if (!(eps > 0)) throw InvalidArgument("convexity_check: eps must be positive");
  const cplx eta = std::sqrt(w);
  if (std::abs(eta) <= eps) throw NumericError("convexity_check: q' vanishes in the disk (eps too large)");
  ConvexityReport rep;
  rep.min_margin = 1e300;
  rep.bound = 1 - eps / (std::abs(eta) - eps);
  const int n = cfg.grid;
  for (int sign : {1, -1})
    for (int i = 0; i <= n; ++i) {
      const double rad = eps * i / n;
      for (int j = 0; j < 4 * n; ++j) {
        const cplx xi = std::polar(rad, 2 * pi * j / (4 * n));
        const cplx base = double(sign) * eta + xi;
        const cplx q1 = -2.0 * base, q2 = -2.0;
        rep.min_margin = std::min(rep.min_margin, std::real(1.0 + xi * q2 / q1));
      }
    }
  rep.convex = rep.min_margin > 0;
  return rep;
}

}  // namespace mfib::local
