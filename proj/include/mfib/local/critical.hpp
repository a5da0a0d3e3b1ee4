#pragma once

// Critical-set scan for maps (r, s, x, y) -> C: at each s on a grid, Gauss-Newton drives the
// six 2x2 minors of the central-difference Jacobian to zero; survivors are clustered.

#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "mfib/local/models.hpp"

namespace mfib::local {

using RealMap = std::function<Value2<double>(double r, double s, double x, double y)>;

inline RealMap model_map(Model m, double eps = 0.0) {
  return [m, eps](double r, double s, double x, double y) { return eval_real(m, r, s, x, y, eps); };
}

/// Six minors of the 2x4 Jacobian in (r, s, x, y), by central differences.
inline std::array<double, 6> jacobian_minors(const RealMap& f, double r, double s, double x, double y, double h) {
  std::array<std::array<double, 2>, 4> col{};
  const std::array<double, 4> p{r, s, x, y};
  for (int k = 0; k < 4; ++k) {
    auto a = p, b = p;
    a[k] += h;
    b[k] -= h;
    const auto fa = f(a[0], a[1], a[2], a[3]), fb = f(b[0], b[1], b[2], b[3]);
    col[k] = {(fa.re - fb.re) / (2 * h), (fa.im - fb.im) / (2 * h)};
  }
  std::array<double, 6> out{};
  int n = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) out[n++] = col[i][0] * col[j][1] - col[i][1] * col[j][0];
  return out;
}

struct CriticalSet {
  std::vector<LocalPoint> points;
  std::vector<int> component;  // component label per point
  int component_count = 0;
  double max_minor = 0;        // largest |minor| over accepted points
};

namespace detail {

inline double max_abs(const std::array<double, 6>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

/// Solves the 3x3 system a * u = b by Cramer's rule; returns false when singular.
inline bool solve3(const std::array<std::array<double, 3>, 3>& a, const std::array<double, 3>& b,
                   std::array<double, 3>& u) {
  auto det = [](const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det(a);
  if (std::fabs(d) < 1e-300) return false;
  for (int k = 0; k < 3; ++k) {
    auto m = a;
    for (int i = 0; i < 3; ++i) m[i][k] = b[i];
    u[k] = det(m) / d;
  }
  return true;
}

}  // namespace detail

/// Scans s in [0,1) with cfg.grid slices. A point is accepted when every minor is below tol_geom.
inline CriticalSet critical_scan(const RealMap& f, Chart chart, const NumericConfig& cfg) {
  cfg.validate();
  const double h = cfg.fd_step, delta = 1e-6;
  const std::array<std::array<double, 3>, 3> seeds{{{0.03, 0.02, -0.01}, {-0.03, -0.015, 0.02}, {0.0, 0.01, 0.01}}};
  CriticalSet out;
  for (int k = 0; k < cfg.grid; ++k) {
    const double s = static_cast<double>(k) / cfg.grid;
    auto residual = [&](const std::array<double, 3>& u) { return jacobian_minors(f, u[0], s, u[1], u[2], h); };
    for (const auto& seed : seeds) {
      std::array<double, 3> u = seed;
      auto res = residual(u);
      for (int it = 0; it < 60 && detail::max_abs(res) > 1e-13; ++it) {
        // Jacobian of the residual in (r, x, y), then damped normal equations
        std::array<std::array<double, 3>, 6> jr{};
        for (int c = 0; c < 3; ++c) {
          auto a = u, b = u;
          a[c] += delta;
          b[c] -= delta;
          const auto ra = residual(a), rb = residual(b);
          for (int i = 0; i < 6; ++i) jr[i][c] = (ra[i] - rb[i]) / (2 * delta);
        }
        std::array<std::array<double, 3>, 3> n{};
        std::array<double, 3> g{};
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 6; ++l) n[i][j] += jr[l][i] * jr[l][j];
          n[i][i] += 1e-14;
          for (int l = 0; l < 6; ++l) g[i] -= jr[l][i] * res[l];
        }
        std::array<double, 3> step{};
        if (!detail::solve3(n, g, step)) break;
        for (int c = 0; c < 3; ++c) u[c] += step[c];
        res = residual(u);
        if (std::fabs(u[0]) > 10 || std::hypot(u[1], u[2]) > 10) break;
      }
      if (detail::max_abs(res) >= cfg.tol_geom) continue;
      LocalPoint p = normalize({chart, u[0], s, {u[1], u[2]}});
      bool seen = false;
      for (const auto& q : out.points)
        if (chart_distance(p, q) < 1e-7) seen = true;
      if (seen) continue;
      out.points.push_back(p);
      out.max_minor = std::max(out.max_minor, detail::max_abs(res));
    }
  }
  // single-linkage clustering with a threshold of a few grid spacings
  const std::size_t n = out.points.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  const double link = 3.0 / cfg.grid;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (chart_distance(out.points[i], out.points[j]) < link) parent[find(i)] = find(j);
  std::vector<int> label(n, -1);
  out.component.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (label[root] < 0) label[root] = out.component_count++;
    out.component[i] = label[root];
  }
  return out;
}

inline CriticalSet critical_scan(Model m, const NumericConfig& cfg) {
  return critical_scan(model_map(m, cfg.eps), chart_of(m), cfg);
}

}  // namespace mfib::local
