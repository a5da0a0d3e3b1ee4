#pragma once

// Fold/cusp classification of the stable perturbation F_eps along its critical circle
// r = -4 eps cos 3 theta, z = 0 (theta = pi s), injectivity of its critical value curve, and the
// pointwise tangent-space identities behind the infinite codimension of F_m.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "mfib/local/config.hpp"
#include "mfib/local/dual.hpp"
#include "mfib/local/models.hpp"

namespace mfib::local {

namespace saji_detail {

using std::cos;
using std::sin;

template <class S>
using P4 = std::array<S, 4>;  // (r, theta, x, y)

/// F_eps in (r, theta, x, y).
template <class S>
std::array<S, 2> f_eps(const P4<S>& p, double eps) {
  const S& r = p[0];
  const S& th = p[1];
  const S& x = p[2];
  const S& y = p[3];
  return {r * cos(th) + x * x - y * y + eps * cos(4.0 * th), r * sin(th) + 2.0 * x * y + eps * sin(4.0 * th)};
}

/// dF_eps(v) at p.
template <class S>
std::array<S, 2> df(const P4<S>& p, const P4<S>& v, double eps) {
  P4<Dual<S>> q;
  for (int k = 0; k < 4; ++k) q[k] = Dual<S>(p[k], v[k]);
  const auto f = f_eps(q, eps);
  return {f[0].d, f[1].d};
}

/// Adapted fields eta_1 = d_x, eta_2 = d_y, eta_3 = d_theta + 4 eps sin 3 theta d_r.
template <class S>
P4<S> eta_field(int i, const P4<S>& p, double eps) {
  if (i == 0) return {S(0.0), S(0.0), S(1.0), S(0.0)};
  if (i == 1) return {S(0.0), S(0.0), S(0.0), S(1.0)};
  return {4.0 * eps * sin(3.0 * p[1]), S(1.0), S(0.0), S(0.0)};
}

/// lambda_j = det(dF(xi_1), dF(eta_j)) with xi_1 = d_r.
template <class S>
std::array<S, 3> lambdas(const P4<S>& p, double eps) {
  const auto a = df(p, P4<S>{S(1.0), S(0.0), S(0.0), S(0.0)}, eps);
  std::array<S, 3> out;
  for (int j = 0; j < 3; ++j) {
    const auto b = df(p, eta_field(j, p, eps), eps);
    out[j] = a[0] * b[1] - a[1] * b[0];
  }
  return out;
}

/// The matrix (eta_i lambda_j).
template <class S>
std::array<std::array<S, 3>, 3> eta_lambda(const P4<S>& p, double eps) {
  std::array<std::array<S, 3>, 3> m;
  for (int i = 0; i < 3; ++i) {
    const auto v = eta_field(i, p, eps);
    P4<Dual<S>> q;
    for (int k = 0; k < 4; ++k) q[k] = Dual<S>(p[k], v[k]);
    const auto l = lambdas(q, eps);
    for (int j = 0; j < 3; ++j) m[i][j] = l[j].d;
  }
  return m;
}

template <class S>
S det3(const std::array<std::array<S, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <class S>
P4<S> circle_point(const S& th, double eps) {
  return {-4.0 * eps * cos(3.0 * th), th, S(0.0), S(0.0)};
}

}  // namespace saji_detail

struct SajiPoint {
  double theta = 0;
  std::array<double, 3> lambda{};
  double h = 0;       // det (eta_i lambda_j)
  double dh = 0;      // d/dtheta of H along the critical circle
  double rank_margin = 0;  // largest 3x3 minor of the Jacobian of (lambda_1, lambda_2, lambda_3)
  bool fold = false;
};

/// Saji data at the critical point with parameter theta.
inline SajiPoint saji_point(double eps, double theta) {
  using namespace saji_detail;
  using D1 = Dual<double>;
  SajiPoint out;
  out.theta = theta;
  const auto p = circle_point(D1::variable(theta), eps);
  const D1 h = det3(eta_lambda(p, eps));
  out.h = h.v;
  out.dh = h.d;
  const P4<double> pd{p[0].v, theta, 0.0, 0.0};
  const auto l = lambdas(pd, eps);
  for (int j = 0; j < 3; ++j) out.lambda[j] = l[j];
  // Jacobian of Lambda by one dual pass per coordinate
  std::array<std::array<double, 4>, 3> jac{};
  for (int k = 0; k < 4; ++k) {
    P4<D1> q;
    for (int c = 0; c < 4; ++c) q[c] = D1(pd[c], c == k ? 1.0 : 0.0);
    const auto lk = lambdas(q, eps);
    for (int j = 0; j < 3; ++j) jac[j][k] = lk[j].d;
  }
  for (int drop = 0; drop < 4; ++drop) {
    std::array<std::array<double, 3>, 3> m{};
    for (int j = 0; j < 3; ++j)
      for (int c = 0, cc = 0; c < 4; ++c)
        if (c != drop) m[j][cc++] = jac[j][c];
    out.rank_margin = std::max(out.rank_margin, std::fabs(det3(m)));
  }
  out.fold = out.h != 0;
  return out;
}

struct SajiReport {
  std::vector<double> cusps;                          // theta in [0, pi), ascending
  std::vector<double> cusp_dh;                        // dH/dtheta at each cusp
  std::vector<std::pair<double, double>> fold_arcs;   // open theta intervals between cusps (mod pi)
  double max_h_formula_error = 0;                     // |H - 32 eps sin 3 theta|
  double max_dh_formula_error = 0;                    // |dH - 96 eps cos 3 theta|
  double max_lambda_residual = 0;                     // |lambda| on the critical circle
  double min_rank_margin = 0;
};

inline SajiReport saji_classify(double eps, const NumericConfig& cfg) {
  if (eps == 0) throw InvalidArgument("saji_classify: eps = 0 is the unperturbed germ (no wrinkle)");
  if (!(eps > 0 && eps <= 0.1)) throw InvalidArgument("saji_classify: eps must lie in (0, 0.1]");
  cfg.validate();
  const int n = cfg.grid;
  const double step = pi / n;
  SajiReport rep;
  rep.min_rank_margin = 1e300;
  std::vector<SajiPoint> pts;
  for (int k = 0; k <= n; ++k) pts.push_back(saji_point(eps, (k + 0.5) * step));  // k = n lies past pi
  for (int k = 0; k < n; ++k) {
    const auto& q = pts[k];
    rep.max_h_formula_error = std::max(rep.max_h_formula_error, std::fabs(q.h - 32 * eps * std::sin(3 * q.theta)));
    rep.max_dh_formula_error = std::max(rep.max_dh_formula_error, std::fabs(q.dh - 96 * eps * std::cos(3 * q.theta)));
    for (double l : q.lambda) rep.max_lambda_residual = std::max(rep.max_lambda_residual, std::fabs(l));
    rep.min_rank_margin = std::min(rep.min_rank_margin, q.rank_margin);
  }
  // H flips sign under theta -> theta + pi, so the wrap pair uses the sample beyond pi directly
  for (int k = 0; k < n; ++k) {
    const auto& a = pts[k];
    const auto& b = pts[k + 1];
    if ((a.h < 0) == (b.h < 0)) continue;
    double th = a.theta - a.h * (b.theta - a.theta) / (b.h - a.h);
    for (int it = 0; it < 4; ++it) {
      const auto c = saji_point(eps, th);
      if (c.dh == 0) throw NumericError("saji_classify: degenerate zero of H");
      th -= c.h / c.dh;
    }
    // reduce mod pi; H and dH change sign with each half turn
    const double turns = std::floor(th / pi + 1e-9);
    th -= turns * pi;
    if (std::fabs(th) < 1e-12) th = 0.0;
    const auto c = saji_point(eps, th);
    rep.cusps.push_back(th);
    rep.cusp_dh.push_back(c.dh);
  }
  std::vector<std::size_t> order(rep.cusps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return rep.cusps[i] < rep.cusps[j]; });
  std::vector<double> cs, ds;
  for (auto i : order) {
    cs.push_back(rep.cusps[i]);
    ds.push_back(rep.cusp_dh[i]);
  }
  rep.cusps = cs;
  rep.cusp_dh = ds;
  for (std::size_t i = 0; i < cs.size(); ++i)
    rep.fold_arcs.emplace_back(cs[i], i + 1 < cs.size() ? cs[i + 1] : cs.front() + pi);
  return rep;
}

// ---------------------------------------------------------------------------

/// Critical value curve gamma(theta) = -eps e^{4 i theta} - 2 eps e^{-2 i theta}, period pi.
inline cplx gamma_curve(double eps, double theta) {
  return -eps * std::polar(1.0, 4 * theta) - 2 * eps * std::polar(1.0, -2 * theta);
}

struct InjectivityReport {
  bool injective = false;
  double min_separation = 0;   // min |gamma(t1) - gamma(t2)| over pairs at angular distance > angular_tol
  double min_scaled = 0;       // min |gamma(t1) - gamma(t2)| / (eps d^3) over all pairs, d = angular distance
  double min_factor = 0;       // min |w1 + w2 - 2/(w1 w2)| over pairs at distance > angular_tol, w = e^{2 i theta}
  double max_factorization_error = 0;
  double max_model_error = 0;  // |F_eps(critical point) - gamma|
  int samples = 0;
};

inline InjectivityReport gamma_injectivity(double eps, int samples = 10000, double angular_tol = 1e-2) {
  if (!(eps > 0)) throw InvalidArgument("gamma_injectivity: eps must be positive");
  if (samples < 8) throw InvalidArgument("gamma_injectivity: too few samples");
  InjectivityReport rep;
  rep.samples = samples;
  rep.min_separation = rep.min_scaled = rep.min_factor = 1e300;
  std::vector<cplx> g(samples), w(samples);
  std::vector<double> th(samples);
  for (int k = 0; k < samples; ++k) {
    th[k] = pi * k / samples;
    g[k] = gamma_curve(eps, th[k]);
    w[k] = std::polar(1.0, 2 * th[k]);
    const LocalPoint p{Chart::M, -4 * eps * std::cos(3 * th[k]), th[k] / pi, {}};
    rep.max_model_error = std::max(rep.max_model_error, std::abs(eval_local_model(Model::Feps, p, eps) - g[k]));
  }
  for (int i = 0; i < samples; ++i) {
    const double gr = g[i].real(), gi = g[i].imag();
    // 2 / (w_i w_j) = 2 conj(w_i) conj(w_j) on the unit circle
    const cplx ci = 2.0 * std::conj(w[i]);
    for (int j = i + 1; j < samples; ++j) {
      const double d0 = th[j] - th[i];
      const double d = std::min(d0, pi - d0);
      const double dr = gr - g[j].real(), di = gi - g[j].imag();
      const double sep = std::sqrt(dr * dr + di * di);
      rep.min_scaled = std::min(rep.min_scaled, sep / (eps * d * d * d));
      if (d > angular_tol) rep.min_separation = std::min(rep.min_separation, sep);
      if (j % 97 == 0 || d > angular_tol) {
        const cplx factor = w[i] + w[j] - ci * std::conj(w[j]);
        if (d > angular_tol) rep.min_factor = std::min(rep.min_factor, std::abs(factor));
        if (j % 97 == 0)
          rep.max_factorization_error =
              std::max(rep.max_factorization_error, std::abs(cplx(dr, di) + eps * (w[i] - w[j]) * factor));
      }
    }
  }
  rep.injective = rep.min_separation > 0 && rep.min_scaled > 0;
  return rep;
}

// ---------------------------------------------------------------------------

struct AeIdentityReport {
  int points = 0;
  std::array<double, 4> max_error{};  // per identity: e1 = d_s, e2 = d_r, e3 = d_x, e4 = d_y
};

/// rho(tf(e)) for f(r, s, x, y) = (r cos s + x^2 - y^2, r sin s + 2xy), rho(v) = -v1 sin s + v2 cos s.
inline std::array<double, 4> ae_projections(double r, double s, double x, double y) {
  using D = Dual<double>;
  const std::array<double, 4> p{s, r, x, y};  // basis order e1..e4
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) {
    std::array<D, 4> q;
    for (int c = 0; c < 4; ++c) q[c] = D(p[c], c == k ? 1.0 : 0.0);
    const D& ss = q[0];
    const D& rr = q[1];
    const D& xx = q[2];
    const D& yy = q[3];
    const D f1 = rr * cos(ss) + xx * xx - yy * yy;
    const D f2 = rr * sin(ss) + 2.0 * xx * yy;
    out[k] = -f1.d * std::sin(s) + f2.d * std::cos(s);
  }
  return out;
}

inline AeIdentityReport ae_identity_check(const NumericConfig& cfg, int points = 1000) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0), ang(-pi, pi);
  AeIdentityReport rep;
  rep.points = points;
  for (int i = 0; i < points; ++i) {
    const double r = u(rng), s = ang(rng), x = u(rng), y = u(rng);
    const auto got = ae_projections(r, s, x, y);
    const std::array<double, 4> want{r, 0.0, 2 * (y * std::cos(s) - x * std::sin(s)),
                                     2 * (x * std::cos(s) + y * std::sin(s))};
    for (int k = 0; k < 4; ++k) rep.max_error[k] = std::max(rep.max_error[k], std::fabs(got[k] - want[k]));
  }
  return rep;
}

}  // namespace mfib::local
