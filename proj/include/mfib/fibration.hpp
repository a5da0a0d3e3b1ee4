#pragma once

// M-fibration models built from monodromy factorizations into standard crosscap
// transpositions, with handle counts and Euler characteristics of the total space
// and of its orientation double cover.

#include <array>
#include <istream>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "mfib/error.hpp"
#include "mfib/mcg.hpp"
#include "mfib/surface_homology.hpp"

namespace mfib {

struct BaseD2 {};
struct BaseS2 {};
/// Section framings are kept as magnitudes |a_i|; no sign convention is attached.
struct BaseS2WithSections {
  std::vector<int> framing_magnitudes;
};

using Base = std::variant<BaseD2, BaseS2, BaseS2WithSections>;

inline bool is_closed_base(const Base& b) { return !std::holds_alternative<BaseD2>(b); }

inline std::string to_string(const Base& b) {
  if (std::holds_alternative<BaseD2>(b)) return "D2";
  if (std::holds_alternative<BaseS2>(b)) return "S2";
  std::string s = "S2 sections=";
  const auto& m = std::get<BaseS2WithSections>(b).framing_magnitudes;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s;
}

using HandleCounts = std::array<int, 5>;

inline int alternating_sum(const HandleCounts& h) { return h[0] - h[1] + h[2] - h[3] + h[4]; }

inline std::string to_string(const HandleCounts& h) {
  return std::to_string(h[0]) + "," + std::to_string(h[1]) + "," + std::to_string(h[2]) + "," +
         std::to_string(h[3]) + "," + std::to_string(h[4]);
}

class MFibrationModel {
 public:
  const SurfaceSpec& fiber() const { return fiber_; }
  int genus() const { return fiber_.genus; }
  const Base& base() const { return base_; }
  const std::vector<MCGWord>& singularities() const { return singularities_; }
  int singularity_count() const { return static_cast<int>(singularities_.size()); }
  /// Entries whose mod-2 image is not a non-trivial orthogonal involution.
  const std::vector<int>& flagged_entries() const { return flagged_; }
  /// Product of the entry representations in factorization order.
  const Z2Matrix& monodromy_rep() const { return product_; }

 private:
  friend MFibrationModel build(const Base&, int, std::vector<MCGWord>);
  SurfaceSpec fiber_;
  Base base_;
  std::vector<MCGWord> singularities_;
  std::vector<int> flagged_;
  Z2Matrix product_;
};

/// Validates a factorization. Over S^2 the mod-2 product must be the identity; this
/// is a necessary condition only, the representation is not faithful.
inline MFibrationModel build(const Base& base, int genus, std::vector<MCGWord> entries) {
  if (genus < 1) throw InvalidArgument("fiber genus must be at least 1");
  if (auto* s = std::get_if<BaseS2WithSections>(&base)) {
    if (s->framing_magnitudes.empty()) throw InvalidArgument("section list must be nonempty");
    for (int a : s->framing_magnitudes)
      if (a < 0) throw InvalidArgument("section framing magnitudes are non-negative");
  }
  MFibrationModel m;
  m.fiber_ = SurfaceSpec::nonorientable(genus);
  m.base_ = base;
  m.product_ = Z2Matrix::identity(genus);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto r = rep_word(entries[k], genus);
    if (r.is_identity() || !(r * r).is_identity() || !r.is_orthogonal()) m.flagged_.push_back(static_cast<int>(k));
    m.product_ = r * m.product_;
  }
  if (is_closed_base(base) && !m.product_.is_identity())
    throw CheckFailure("mod-2 necessary condition failed: monodromy product over S2 is not the identity:\n" +
                       to_string(m.product_));
  m.singularities_ = std::move(entries);
  return m;
}

/// D2: (1, g, 1+n, 0, 0). Closed base adds the cap D2 x N_g: one 2-, g 3-, one 4-handle.
inline HandleCounts handle_counts(const MFibrationModel& m) {
  const int g = m.genus(), n = m.singularity_count();
  if (is_closed_base(m.base())) return {1, g, 2 + n, g, 1};
  return {1, g, 1 + n, 0, 0};
}

inline int euler_char(const MFibrationModel& m) { return alternating_sum(handle_counts(m)); }

class MtildeModel {
 public:
  explicit MtildeModel(MFibrationModel parent)
      : parent_(std::move(parent)), fiber_(double_cover_spec(parent_.fiber())) {}

  const MFibrationModel& parent() const { return parent_; }
  const SurfaceSpec& fiber() const { return fiber_; }
  /// Each M-singularity lifts to a pair of critical circles, one 2-handle each.
  int singular_handle_count() const { return 2 * parent_.singularity_count(); }

 private:
  MFibrationModel parent_;
  SurfaceSpec fiber_;
};

inline MtildeModel double_cover(const MFibrationModel& m) { return MtildeModel(m); }

inline HandleCounts handle_counts(const MtildeModel& c) {
  const int g = c.fiber().genus, n2 = c.singular_handle_count();
  if (is_closed_base(c.parent().base())) return {1, 2 * g, 2 + n2, 2 * g, 1};
  return {1, 2 * g, 1 + n2, 0, 0};
}

inline int euler_char(const MtildeModel& c) { return alternating_sum(handle_counts(c)); }

// ---------------------------------------------------------------------------
// Factorization file:
//   fiber N genus=<g>
//   base D2 | base S2 | base S2 sections=<|a_1|>,<|a_2|>,...
//   u <i>
//   conj: <gen> [, <gen>]* ; u <i>      (entry w^{-1} u_i w)

struct Factorization {
  Base base;
  int genus = 0;
  std::vector<MCGWord> entries;
};

inline Base parse_base(const std::vector<std::string>& toks, int line) {
  if (toks.size() == 2 && toks[1] == "D2") return BaseD2{};
  if (toks.size() == 2 && toks[1] == "S2") return BaseS2{};
  if (toks.size() == 3 && toks[1] == "S2" && toks[2].rfind("sections=", 0) == 0) {
    BaseS2WithSections s;
    std::string list = toks[2].substr(9);
    std::size_t start = 0;
    while (start <= list.size()) {
      auto end = list.find(',', start);
      auto item = list.substr(start, end == std::string::npos ? std::string::npos : end - start);
      try {
        std::size_t pos = 0;
        int v = std::stoi(item, &pos);
        if (pos != item.size() || v < 0) throw std::invalid_argument("x");
        s.framing_magnitudes.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("bad section magnitude '" + item + "'", line);
      }
      if (end == std::string::npos) break;
      start = end + 1;
    }
    return s;
  }
  throw ParseError("expected 'base D2', 'base S2' or 'base S2 sections=<list>'", line);
}

inline MCGWord parse_entry_line(const std::string& text, int genus, int line) {
  auto toks = split_ws(text);
  if (toks.empty()) throw ParseError("empty entry", line);
  if (toks[0] != "conj:") {
    auto e = parse_generator_tokens(toks, genus, line);
    if (e.generator.is_twist() || e.exponent != 1)
      throw ParseError("singular entries must be crosscap transpositions 'u <i>' or conjugates", line);
    return MCGWord({e});
  }
  auto body = text.substr(text.find("conj:") + 5);
  auto semi = body.find(';');
  if (semi == std::string::npos) throw ParseError("conjugated entry needs ';' before 'u <i>'", line);
  std::vector<WordEntry> conj;
  std::string prefix = body.substr(0, semi);
  std::size_t start = 0;
  while (true) {
    auto end = prefix.find(',', start);
    auto piece = split_ws(prefix.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (!piece.empty()) conj.push_back(parse_generator_tokens(piece, genus, line));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  auto core = split_ws(body.substr(semi + 1));
  auto u = parse_generator_tokens(core, genus, line);
  if (u.generator.is_twist() || u.exponent != 1) throw ParseError("conjugated core must be 'u <i>'", line);
  return MCGWord::conjugated_crosscap(MCGWord(std::move(conj)), genus, u.generator.as_crosscap().index);
}

inline Factorization parse_factorization(std::istream& in) {
  Factorization f;
  bool have_base = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto text = strip_comment(raw);
    auto toks = split_ws(text);
    if (toks.empty()) continue;
    if (toks[0] == "fiber") {
      if (f.genus) throw ParseError("duplicate fiber header", line);
      f.genus = parse_fiber_header(toks, line);
    } else if (toks[0] == "base") {
      if (have_base) throw ParseError("duplicate base line", line);
      f.base = parse_base(toks, line);
      have_base = true;
    } else {
      if (!f.genus) throw ParseError("entry before 'fiber N genus=<g>' header", line);
      f.entries.push_back(parse_entry_line(text, f.genus, line));
    }
  }
  if (!f.genus) throw ParseError("missing 'fiber N genus=<g>' header");
  if (!have_base) throw ParseError("missing 'base' line");
  return f;
}

inline MFibrationModel build(const Factorization& f) { return build(f.base, f.genus, f.entries); }

}  // namespace mfib
