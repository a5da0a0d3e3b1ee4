#pragma once

// Deterministic SVG plots: the critical value curve of F_eps, the projected isotoped attaching
// circles in the annulus, and the branch data of the fiber F_a^{-1}(1/2).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mfib/local/attaching.hpp"
#include "mfib/local/saji.hpp"

namespace mfib::local {

enum class Artifact { Gamma, Attach, Fiber };

inline const char* artifact_filename(Artifact a) {
  switch (a) {
    case Artifact::Gamma: return "gamma.svg";
    case Artifact::Attach: return "attach.svg";
    case Artifact::Fiber: return "fiber.svg";
  }
  return "";
}

/// Fixed 600x600 canvas; data coordinates mapped affinely from a box, y up.
class SvgCanvas {
 public:
  SvgCanvas(double xmin, double xmax, double ymin, double ymax) : x0_(xmin), x1_(xmax), y0_(ymin), y1_(ymax) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n"
         << "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const char* color, bool closed = false,
                const char* dash = nullptr) {
    out_ << "<" << (closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.5\"";
    if (dash) out_ << " stroke-dasharray=\"" << dash << "\"";
    out_ << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) out_ << (i ? " " : "") << px(pts[i].first) << "," << py(pts[i].second);
    out_ << "\"/>\n";
  }

  void dot(double x, double y, double radius, const char* color) {
    out_ << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"" << fmt(radius) << "\" fill=\"" << color
         << "\"/>\n";
  }

  void label(double x, double y, const std::string& text) {
    out_ << "<text x=\"" << px(x) << "\" y=\"" << py(y) << "\" font-family=\"monospace\" font-size=\"12\">" << text
         << "</text>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s = buf;
    return s == "-0.0000" ? "0.0000" : s;
  }

 private:
  std::string px(double x) const { return fmt(40 + 520 * (x - x0_) / (x1_ - x0_)); }
  std::string py(double y) const { return fmt(560 - 520 * (y - y0_) / (y1_ - y0_)); }

  double x0_, x1_, y0_, y1_;
  std::ostringstream out_;
};

inline std::string render_gamma_svg(const NumericConfig& cfg) {
  const double e = cfg.eps;
  SvgCanvas c(-3.3 * e, 3.3 * e, -3.3 * e, 3.3 * e);
  std::vector<std::pair<double, double>> pts;
  const int n = 4 * cfg.grid;
  for (int k = 0; k < n; ++k) {
    const cplx g = gamma_curve(e, pi * k / n);
    pts.emplace_back(g.real(), g.imag());
  }
  c.polyline(pts, "black", true);
  for (double th : saji_classify(e, cfg).cusps) {
    const cplx g = gamma_curve(e, th);
    c.dot(g.real(), g.imag(), 4, "red");
  }
  c.label(-3.2 * e, 3.1 * e, "critical values of F_eps, eps=" + SvgCanvas::fmt(e));
  return c.finish();
}

namespace svg_detail {

inline std::pair<double, double> embed(double r, double s) {
  const cplx p = annulus_embed(r, s);
  return {p.real(), p.imag()};
}

inline std::vector<std::pair<double, double>> embed_curve(const TracedCurve& curve) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : curve.samples) out.push_back(embed(p.r, p.s));
  return out;
}

inline void annulus_frame(SvgCanvas& c) {
  for (double r : {-0.9, 0.9}) {
    std::vector<std::pair<double, double>> ring;
    for (int k = 0; k < 360; ++k) ring.push_back(embed(r, k / 360.0));
    c.polyline(ring, "gray", true, "4,3");
  }
  for (const auto& b : fiber_branch_points) {
    const auto [x, y] = embed(b.r, b.s);
    c.dot(x, y, 5, "red");
  }
}

}  // namespace svg_detail

inline std::string render_attach_svg(const NumericConfig& cfg) {
  SvgCanvas c(-2.6, 2.6, -2.6, 2.6);
  svg_detail::annulus_frame(c);
  const char* colors[] = {"blue", "green"};
  for (int i : {1, 2}) c.polyline(svg_detail::embed_curve(attaching_class(i, cfg).curve), colors[i - 1], true);
  c.label(-2.5, 2.4, "isotoped attaching circles projected to A");
  return c.finish();
}

inline std::string render_fiber_svg(const NumericConfig&) {
  SvgCanvas c(-2.6, 2.6, -2.6, 2.6);
  svg_detail::annulus_frame(c);
  c.polyline(svg_detail::embed_curve(core_lift(1, 256)), "blue", true);
  std::vector<std::pair<double, double>> cut;
  for (int k = 0; k <= 128; ++k) {
    const double t = k / 128.0;
    cut.push_back(svg_detail::embed(0.5 - t, t / 2));
  }
  c.polyline(cut, "black");
  for (double s0 : reference_lines) {
    std::vector<std::pair<double, double>> line;
    for (int k = 0; k <= 64; ++k) line.push_back(svg_detail::embed(-0.9 + 1.8 * k / 64, s0));
    c.polyline(line, "orange", false, "2,2");
  }
  c.label(-2.5, 2.4, "branch points, branch cut, core and reference lines of F_a^-1(1/2)");
  return c.finish();
}

inline std::string render_svg(Artifact a, const NumericConfig& cfg) {
  switch (a) {
    case Artifact::Gamma: return render_gamma_svg(cfg);
    case Artifact::Attach: return render_attach_svg(cfg);
    case Artifact::Fiber: return render_fiber_svg(cfg);
  }
  throw InvalidArgument("render_svg: unknown artifact");
}

inline void write_svg(Artifact a, const std::filesystem::path& path, const NumericConfig& cfg) {
  const std::string text = render_svg(a, cfg);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

/// Writes each artifact under dir (created if missing) and returns the paths in order.
inline std::vector<std::filesystem::path> render_svgs(const std::vector<Artifact>& artifacts,
                                                      const std::filesystem::path& dir, const NumericConfig& cfg) {
  if (artifacts.empty()) throw InvalidArgument("render_svgs: empty artifact list");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> out;
  for (auto a : artifacts) {
    out.push_back(dir / artifact_filename(a));
    write_svg(a, out.back(), cfg);
  }
  return out;
}

}  // namespace mfib::local
