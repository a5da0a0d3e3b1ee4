// Command-line front end. Exit codes: 0 all checks pass, 1 check failure, 2 usage or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "examples_data.hpp"
#include "mfib/cover_homology.hpp"
#include "mfib/fibration.hpp"
#include "mfib/local/attaching.hpp"
#include "mfib/local/critical.hpp"
#include "mfib/local/saji.hpp"
#include "mfib/local/svg.hpp"
#include "mfib/local/transport.hpp"
#include "mfib/mcg.hpp"
#include "report.hpp"

namespace {

using mfib::cli::Report;
using namespace mfib;
using namespace mfib::local;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string matrix_rows(const Z2Matrix& m) {
  std::string s;
  for (int i = 0; i < m.size(); ++i) {
    if (i) s += ";";
    for (int j = 0; j < m.size(); ++j) s += m(i, j) ? '1' : '0';
  }
  return s;
}

std::string int_matrix_rows(const IntMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ";";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + std::to_string(m(i, j));
  }
  return s.empty() ? "-" : s;
}

std::string fixed4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return std::string(buf) == "-0.0000" ? "0.0000" : buf;
}

// ---------------------------------------------------------------------------

int run_relcheck(const std::string& path, Report& rep) {
  std::istringstream in(read_file(path));
  const auto wf = parse_word_file(in);
  const auto m = wf.word.entries().empty() ? Z2Matrix::identity(wf.genus) : rep_word(wf.word, wf.genus);
  const bool id = m.is_identity();
  rep.set("genus", wf.genus);
  rep.set("length", static_cast<long long>(wf.word.entries().size()));
  rep.set("rep", matrix_rows(m));
  rep.set("identity", id ? "yes" : "no");
  bool squares = true;
  for (int i = 1; i < wf.genus; ++i) {
    const bool ok = check_square_relation(wf.genus, i);
    squares = squares && ok;
    rep.set("square_relation.u" + std::to_string(i), ok ? "holds" : "fails");
  }
  rep.set("scope", "mod-2 necessary condition");
  return id && squares ? 0 : 1;
}

void fibration_invariants(const Factorization& f, Report& rep) {
  const auto m = build(f);
  const auto cov = double_cover(m);
  rep.set("base", to_string(m.base()));
  rep.set("fiber", to_string(m.fiber()));
  rep.set("singularities", m.singularity_count());
  rep.set("handles", to_string(handle_counts(m)));
  rep.set("chi", euler_char(m));
  rep.set("cover_fiber", to_string(cov.fiber()));
  rep.set("cover_handles", to_string(handle_counts(cov)));
  rep.set("cover_chi", euler_char(cov));
  rep.set("flagged_entries", static_cast<long long>(m.flagged_entries().size()));
  if (is_closed_base(m.base())) rep.set("monodromy", "mod-2 necessary condition satisfied");
  else rep.set("monodromy", matrix_rows(m.monodromy_rep()));
}

int run_invariants(const std::string& path, Report& rep) {
  std::istringstream in(read_file(path));
  fibration_invariants(parse_factorization(in), rep);
  return 0;
}

struct CoverResult {
  HomologyReport homology;
  ChainPresentation presentation;
  DiagramTranscription diagram;
};

CoverResult cover_pipeline(const std::string& fact_text, const std::string& diagram_text, Report& rep) {
  std::istringstream fin(fact_text), din(diagram_text);
  const auto f = parse_factorization(fin);
  fibration_invariants(f, rep);
  const auto cov = double_cover(build(f));
  CoverResult out;
  out.diagram = parse_transcription(din);
  out.presentation = transcribe(out.diagram);
  const auto expected_two = static_cast<std::size_t>(handle_counts(cov)[2]);
  if (out.presentation.two_handle_count() != expected_two)
    throw CheckFailure("diagram has " + std::to_string(out.presentation.two_handle_count()) +
                       " 2-handles, the cover needs " + std::to_string(expected_two));
  const auto red = reduce_by_cancellation(out.presentation);
  std::string moves;
  for (const auto& mv : red.moves) moves += (moves.empty() ? "" : "; ") + to_string(mv);
  rep.set("relations", int_matrix_rows(out.presentation.relations));
  rep.set("chain_moves", moves.empty() ? "-" : moves);
  rep.set("reduced_relations", int_matrix_rows(red.result.relations));
  out.homology = betti_report(cov, out.presentation);
  const auto h1 = h1_from_presentation(out.presentation);
  rep.check("moves_preserve_h1", h1 == h1_from_presentation(red.result));
  rep.set("betti", betti_string(out.homology));
  rep.set("h1", to_string(h1));
  return out;
}

int run_cover(const std::string& fact, const std::string& diagram, Report& rep) {
  cover_pipeline(read_file(fact), read_file(diagram), rep);
  return rep.ok() ? 0 : 1;
}

/// Derived attaching classes written over the diagram's 1-handle basis.
std::vector<long long> class_over_rows(const FiberClass& c, std::size_t rows) {
  if (rows == 2) return {c.torus()[0], c.torus()[1]};
  std::vector<long long> v{c.coords[0], c.coords[1], c.coords[2]};
  v.resize(rows, 0);
  return v;
}

int run_examples(const std::string& name, const NumericConfig& cfg, Report& rep) {
  struct Target {
    const char* fact;
    const char* diagram;
    int chi;
    const char* handles;
    int cover_chi;
    const char* betti;
    const char* h1;
  };
  namespace data = mfib::cli::bundled;
  Target t{};
  if (name == "x0") t = {data::x0_fact, data::x0_diagram, 2, "1,2,4,2,1", 4, "1,0,2,0,1", "Z/2"};
  else if (name == "x1") t = {data::x1_fact, data::x1_diagram, 0, "1,3,4,3,1", 0, "1,1,0,1,1", "Z + Z/2"};
  else throw InvalidArgument("unknown example '" + name + "' (expected x0 or x1)");
  rep.set("example", name);
  const auto res = cover_pipeline(t.fact, t.diagram, rep);
  const auto& d = rep.data();
  rep.check("chi", d["chi"].get<int>() == t.chi);
  rep.check("handles", d["handles"].get<std::string>() == t.handles);
  rep.check("cover_chi", d["cover_chi"].get<int>() == t.cover_chi);
  rep.check("betti", d["betti"].get<std::string>() == t.betti);
  rep.check("h1", d["h1"].get<std::string>() == t.h1);
  // the singular components must carry the numerically derived attaching classes
  const auto rows = res.presentation.one_handle_count;
  const std::vector<std::vector<long long>> derived{class_over_rows(attaching_class(1, cfg).cls, rows),
                                                    class_over_rows(attaching_class(2, cfg).cls, rows)};
  bool match = true;
  for (std::size_t j = 0; j < res.diagram.components.size(); ++j) {
    const auto& id = res.diagram.components[j].id;
    if (id.size() < 2 || id[0] != 'c' || (id[1] != '1' && id[1] != '2')) continue;
    match = match && res.presentation.relations.column(j) == derived[id[1] == '1' ? 0 : 1];
  }
  rep.check("diagram_matches_derived_classes", match);
  return rep.ok() ? 0 : 1;
}

// ---------------------------------------------------------------------------

void verify_fibers(const NumericConfig& cfg, Report& rep) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> lg(-9.0, 0.0), ang(0.0, 2 * pi);
  bool counts = true;
  for (int k = 0; k < 100; ++k) {
    const cplx w = std::polar(std::pow(10.0, lg(rng)), ang(rng));
    counts = counts && branch_points(Model::Fm, w).size() == 1 && branch_points(Model::Fa, w).size() == 2;
  }
  rep.set("fiber.euler_fm", fiber_euler(Model::Fm, 0.5));
  rep.set("fiber.euler_fa", fiber_euler(Model::Fa, 0.5));
  rep.check("fiber_branch_counts", counts);
  rep.check("fiber_euler", fiber_euler(Model::Fm, 0.5) == -1 && fiber_euler(Model::Fa, 0.5) == -2);
}

void verify_critical(const NumericConfig& cfg, Report& rep) {
  const auto fm = critical_scan(Model::Fm, cfg);
  double fm_off = 0;
  for (const auto& p : fm.points) fm_off = std::max({fm_off, std::fabs(p.r), std::abs(p.z)});
  rep.set("critical.fm_components", fm.component_count);
  rep.set("critical.fm_offset", fm_off);
  rep.check("critical_fm", fm.component_count == 1 && !fm.points.empty() && fm_off < cfg.tol_geom);
  const auto fe = critical_scan(model_map(Model::Feps, cfg.eps), Chart::M, cfg);
  double resid = 0;
  for (const auto& p : fe.points) resid = std::max(resid, std::fabs(p.r + 4 * cfg.eps * std::cos(3 * pi * p.s)));
  rep.set("critical.feps_components", fe.component_count);
  rep.set("critical.feps_residual", resid);
  rep.check("critical_feps", fe.component_count == 1 && !fe.points.empty() && resid < 1e-5);
}

void verify_transport(const NumericConfig& cfg, Report& rep) {
  const auto t = monodromy_transport(cfg, 1000);
  rep.set("transport.samples", t.samples);
  rep.set("transport.shift_error", t.max_shift_error);
  rep.set("transport.fiber_error", t.max_fiber_error);
  rep.set("transport.rotation_error", t.max_rotation_error);
  rep.set("transport.fixed_error", t.max_fixed_error);
  rep.set("transport.oracle_error", t.max_oracle_error);
  rep.check("transport", t.max_shift_error <= 1e-8 && t.max_fiber_error <= 1e-6 && t.max_rotation_error <= 1e-6 &&
                             t.max_fixed_error <= 1e-6 && t.max_oracle_error <= 1e-8);
  const auto cv = convexity_check(0.5, 0.1, cfg);
  rep.set("convexity.margin", cv.min_margin);
  rep.check("convexity", cv.convex);
}

void verify_flows(const NumericConfig& cfg, Report& rep) {
  auto [c1, c2] = attach_circles(0.5, std::max(256, 2 * cfg.grid));
  const std::vector<const TracedCurve*> circles{&c1, &c2};
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string tag = "flow.c" + std::to_string(i + 1) + ".";
    FlowReport fr;
    for (double t : {0.25, 0.5, 0.75, 1.0}) isotopy_flow(*circles[i], t, cfg, &fr);
    rep.set(tag + "v_omega", fr.max_v_omega);
    rep.set(tag + "v_eta_minus_1", fr.max_v_eta_error);
    rep.set(tag + "eta_decay", fr.max_decay_error);
    rep.set(tag + "omega_drift", fr.max_omega_drift);
    rep.set(tag + "level_error", fr.max_level_error);
    rep.set(tag + "real_part_drift", fr.max_real_drift);
    rep.check("flow_c" + std::to_string(i + 1),
              fr.max_v_omega < 1e-6 && fr.max_v_eta_error < 1e-6 && fr.max_decay_error < 1e-6 &&
                  fr.max_omega_drift < 1e-6 && fr.max_level_error < 1e-6 && fr.max_real_drift < 1e-6);
    const auto fw = tangency_framing_check(*circles[i], cfg);
    const std::string ft = "framing.c" + std::to_string(i + 1) + ".";
    rep.set(ft + "identity_r", fw.max_identity_error_r);
    rep.set(ft + "identity_y", fw.max_identity_error_y);
    rep.set(ft + "tangent_margin", fw.min_tangent_margin);
    rep.set(ft + "dy_literal_margin", fw.min_dy_independence);
    rep.set(ft + "relative_winding", fw.relative_winding);
    rep.check("framing_c" + std::to_string(i + 1),
              fw.max_identity_error_r < cfg.tol_identity && fw.max_identity_error_y < cfg.tol_identity &&
                  fw.min_tangent_margin > 0 && fw.relative_winding == 0);
  }
  rep.set("framing.note", "d_y is parallel to V where rho_z = 1; framing compared by relative winding");
}

void verify_attaching(const NumericConfig& cfg, Report& rep) {
  const auto a1 = attaching_class(1, cfg), a2 = attaching_class(2, cfg);
  rep.set("attach.c1", to_string(a1.cls));
  rep.set("attach.c2", to_string(a2.cls));
  const auto x = a1.cls.torus(), y = a2.cls.torus();
  const long long det = x[0] * y[1] - x[1] * y[0];
  rep.set("attach.torus_det", det);
  rep.check("attach", !a1.cls.is_zero() && std::llabs(det) == 2);
  const auto r1 = arc_report(a1.curve), r2 = arc_report(a2.curve);
  rep.set("attach.arc1", fixed4(r1.start[0]) + "," + fixed4(r1.start[1]) + "->" + fixed4(r1.end[0]) + "," +
                             fixed4(r1.end[1]));
  rep.set("attach.arc2", fixed4(r2.start[0]) + "," + fixed4(r2.start[1]) + "->" + fixed4(r2.end[0]) + "," +
                             fixed4(r2.end[1]));
  rep.set("attach.loop_turns", static_cast<long long>(std::lround(r1.delta_s - r2.delta_s)));
  rep.check("arcs", r1.endpoint_distance < cfg.tol_geom && r2.endpoint_distance < cfg.tol_geom &&
                        std::lround(r1.delta_s - r2.delta_s) == 1);
}

void verify_saji(const NumericConfig& cfg, Report& rep) {
  const auto s = saji_classify(cfg.eps, cfg);
  std::string cusps;
  for (double c : s.cusps) cusps += (cusps.empty() ? "" : ",") + fixed4(c);
  rep.set("cusps", static_cast<long long>(s.cusps.size()));
  rep.set("cusp_thetas", cusps);
  rep.set("saji.h_error", s.max_h_formula_error);
  rep.set("saji.rank_margin", s.min_rank_margin);
  bool located = s.cusps.size() == 3;
  for (std::size_t k = 0; located && k < 3; ++k) located = std::fabs(s.cusps[k] - k * pi / 3) < 1e-4;
  rep.check("saji", located && s.max_h_formula_error < 1e-10 && s.min_rank_margin > 0);
  const auto g = gamma_injectivity(cfg.eps);
  rep.set("gamma.min_separation", g.min_separation);
  rep.set("gamma.min_scaled_separation", g.min_scaled);
  rep.check("gamma_injective", g.injective);
  const auto ae = ae_identity_check(cfg);
  double worst = 0;
  for (double e : ae.max_error) worst = std::max(worst, e);
  rep.set("ae.points", ae.points);
  rep.set("ae.max_error", worst);
  rep.check("ae_identities", worst < cfg.tol_identity);
}

int run_localmodel(const std::string& mode, const NumericConfig& cfg, const std::string& out_dir, Report& rep) {
  if (cfg.eps == 0) throw InvalidArgument("eps = 0 is degenerate: the critical circle of F_0 is not wrinkled");
  cfg.validate();
  rep.set("eps", cfg.eps);
  rep.set("seed", static_cast<long long>(cfg.seed));
  rep.set("grid", cfg.grid);
  if (mode == "plot") {
    const auto paths = render_svgs({Artifact::Gamma, Artifact::Attach, Artifact::Fiber}, out_dir, cfg);
    std::vector<std::string> names;
    for (const auto& p : paths) names.push_back(p.string());
    rep.set("written", names);
    return 0;
  }
  if (!(cfg.eps > 0 && cfg.eps <= 0.1)) throw InvalidArgument("--eps must lie in (0, 0.1] for the wrinkle checks");
  verify_fibers(cfg, rep);
  verify_critical(cfg, rep);
  verify_transport(cfg, rep);
  verify_flows(cfg, rep);
  verify_attaching(cfg, rep);
  verify_saji(cfg, rep);
  rep.set("verdict", rep.ok() ? "PASS" : "FAIL");
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical and algebraic checks for M-fibrations and their double covers"};
  app.require_subcommand(1);
  NumericConfig cfg;
  bool json = false;
  std::string out_dir = ".";
  app.add_option("--eps", cfg.eps, "perturbation parameter of F_eps");
  app.add_option("--tol", cfg.tol_geom, "geometric tolerance");
  app.add_option("--grid", cfg.grid, "grid resolution");
  auto* seed_opt = app.add_option("--seed", cfg.seed, "random seed (fallback: MFIB_SEED)");
  app.add_flag("--json", json, "emit one JSON object instead of key: value lines");
  app.add_option("--out", out_dir, "output directory for plots");

  std::string word_file, fact_file, diagram_file, mode, example;
  auto* relcheck = app.add_subcommand("relcheck", "mod-2 representation of a word");
  relcheck->add_option("file", word_file)->required();
  auto* invariants = app.add_subcommand("invariants", "handle counts and Euler characteristics");
  invariants->add_option("file", fact_file)->required();
  auto* cover = app.add_subcommand("cover", "homology of the orientation double cover");
  cover->add_option("factorization", fact_file)->required();
  cover->add_option("diagram", diagram_file)->required();
  auto* localmodel = app.add_subcommand("localmodel", "local-model numerics");
  localmodel->add_option("mode", mode)->required()->check(CLI::IsMember({"verify", "plot"}));
  auto* examples = app.add_subcommand("examples", "bundled examples x0, x1");
  examples->add_option("name", example)->required();
  for (auto* sub : {relcheck, invariants, cover, localmodel, examples}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Report rep;
  int code = 0;
  try {
    if (seed_opt->count() == 0) {
      if (const char* env = std::getenv("MFIB_SEED")) {
        try {
          std::size_t pos = 0;
          cfg.seed = std::stoull(env, &pos);
          if (pos != std::string(env).size()) throw std::invalid_argument("x");
        } catch (const std::exception&) {
          throw InvalidArgument(std::string("MFIB_SEED is not an unsigned integer: ") + env);
        }
      }
    }
    if (*relcheck) code = run_relcheck(word_file, rep);
    else if (*invariants) code = run_invariants(fact_file, rep);
    else if (*cover) code = run_cover(fact_file, diagram_file, rep);
    else if (*localmodel) code = run_localmodel(mode, cfg, out_dir, rep);
    else code = run_examples(example, cfg, rep);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << (json ? rep.json() : rep.text());
  return code;
}
