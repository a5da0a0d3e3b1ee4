#pragma once

// Chain-level Kirby calculus on orientation double covers: diagram transcriptions,
// relation matrices over the 1-handle basis, handle slides and 1-/2-handle
// cancellations, first homology and Betti numbers.

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mfib/error.hpp"
#include "mfib/fibration.hpp"
#include "mfib/int_matrix.hpp"
#include "mfib/mcg.hpp"
#include "mfib/smith.hpp"

namespace mfib {

/// Columns are 2-handle attaching classes written over the 1-handle basis (rows).
struct ChainPresentation {
  std::size_t one_handle_count = 0;
  IntMatrix relations;

  ChainPresentation() = default;
  ChainPresentation(std::size_t n1, IntMatrix rel) : one_handle_count(n1), relations(std::move(rel)) {
    if (relations.cols() > 0 && relations.rows() != n1)
      throw InvalidArgument("ChainPresentation: relation rows must equal the 1-handle count");
    if (relations.cols() == 0) relations = IntMatrix(n1, 0);
  }
  std::size_t two_handle_count() const { return relations.cols(); }
};

inline H1Decomposition h1_from_presentation(const ChainPresentation& p) {
  return cokernel(p.relations, p.one_handle_count);
}

struct Slide {
  std::size_t target;  // column j
  std::size_t over;    // column k
  int sign = 1;
};
struct Cancel {
  std::size_t one_handle;  // row r
  std::size_t two_handle;  // column j
};
using ChainMove = std::variant<Slide, Cancel>;

/// Slide: column j += sign * column k. Cancel: needs a +-1 entry at (r, j); clears row r
/// against column j, then deletes row r and column j.
inline ChainPresentation chain_move(const ChainPresentation& p, const ChainMove& move) {
  const auto& a = p.relations;
  if (auto* s = std::get_if<Slide>(&move)) {
    if (s->target >= a.cols() || s->over >= a.cols() || s->target == s->over)
      throw InvalidArgument("slide: bad 2-handle indices");
    if (s->sign != 1 && s->sign != -1) throw InvalidArgument("slide: sign must be +-1");
    auto out = p;
    for (std::size_t r = 0; r < a.rows(); ++r) out.relations(r, s->target) += s->sign * a(r, s->over);
    return out;
  }
  const auto& c = std::get<Cancel>(move);
  if (c.one_handle >= a.rows() || c.two_handle >= a.cols()) throw InvalidArgument("cancel: index out of range");
  const long long piv = a(c.one_handle, c.two_handle);
  if (piv != 1 && piv != -1)
    throw InvalidArgument("cancel: entry (" + std::to_string(c.one_handle) + "," + std::to_string(c.two_handle) +
                          ") is not +-1");
  IntMatrix work = a;
  for (std::size_t col = 0; col < work.cols(); ++col) {
    if (col == c.two_handle) continue;
    const long long f = work(c.one_handle, col) * piv;  // piv^{-1} == piv
    if (f == 0) continue;
    for (std::size_t r = 0; r < work.rows(); ++r) work(r, col) -= f * work(r, c.two_handle);
  }
  IntMatrix out(a.rows() - 1, a.cols() - 1);
  for (std::size_t r = 0, rr = 0; r < a.rows(); ++r) {
    if (r == c.one_handle) continue;
    for (std::size_t col = 0, cc = 0; col < a.cols(); ++col) {
      if (col == c.two_handle) continue;
      out(rr, cc++) = work(r, col);
    }
    ++rr;
  }
  return ChainPresentation(p.one_handle_count - 1, std::move(out));
}

struct Reduction {
  ChainPresentation result;
  std::vector<ChainMove> moves;  // indices refer to the presentation current at each step
};

/// Cancels 1-/2-handle pairs at +-1 entries (first in row-major order) until none is left,
/// then slides away duplicate and negated columns.
inline Reduction reduce_by_cancellation(const ChainPresentation& p) {
  Reduction red{p, {}};
  for (bool again = true; again;) {
    again = false;
    const auto& a = red.result.relations;
    for (std::size_t r = 0; r < a.rows() && !again; ++r)
      for (std::size_t c = 0; c < a.cols() && !again; ++c)
        if (a(r, c) == 1 || a(r, c) == -1) {
          const Cancel mv{r, c};
          red.result = chain_move(red.result, mv);
          red.moves.emplace_back(mv);
          again = true;
        }
  }
  const auto& a = red.result.relations;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t k = 0; k < j; ++k) {
      bool zero = true, same = true, opposite = true;
      for (std::size_t r = 0; r < a.rows(); ++r) {
        zero = zero && a(r, j) == 0;
        same = same && a(r, j) == a(r, k);
        opposite = opposite && a(r, j) == -a(r, k);
      }
      if (zero || !(same || opposite)) continue;
      const Slide mv{j, k, same ? -1 : 1};
      red.result = chain_move(red.result, mv);
      red.moves.emplace_back(mv);
    }
  return red;
}

inline std::string to_string(const ChainMove& m) {
  if (auto* s = std::get_if<Slide>(&m))
    return "slide " + std::to_string(s->target) + (s->sign > 0 ? " +" : " -") + std::to_string(s->over);
  const auto& c = std::get<Cancel>(m);
  return "cancel 1h" + std::to_string(c.one_handle) + " 2h" + std::to_string(c.two_handle);
}

/// Framing is either an integer or the fiber framing token.
struct FiberFraming {};
using Framing = std::variant<long long, FiberFraming>;

struct DiagramComponent {
  std::string id;
  Framing framing = FiberFraming{};
  std::vector<std::pair<std::string, int>> passes;  // (dotted id, +-1)
};

struct DiagramTranscription {
  std::vector<std::string> dotted;
  std::vector<DiagramComponent> components;
  std::map<std::pair<std::string, std::string>, long long> links;  // key ordered (min, max)

  long long link(const std::string& a, const std::string& b) const {
    auto it = links.find(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    return it == links.end() ? 0 : it->second;
  }
};

inline ChainPresentation transcribe(const DiagramTranscription& d) {
  std::map<std::string, std::size_t> row;
  for (std::size_t i = 0; i < d.dotted.size(); ++i) {
    if (!row.emplace(d.dotted[i], i).second) throw InvalidArgument("duplicate dotted circle '" + d.dotted[i] + "'");
  }
  IntMatrix rel(d.dotted.size(), d.components.size());
  for (std::size_t j = 0; j < d.components.size(); ++j)
    for (const auto& [dot, sign] : d.components[j].passes) {
      auto it = row.find(dot);
      if (it == row.end())
        throw InvalidArgument("component '" + d.components[j].id + "' passes undeclared dotted circle '" + dot + "'");
      if (sign != 1 && sign != -1) throw InvalidArgument("pass sign must be +1 or -1");
      rel(it->second, j) += sign;
    }
  return ChainPresentation(d.dotted.size(), std::move(rel));
}

// Transcription file:
//   dot <id>
//   comp <id> framing=<int|fiber>
//   pass <comp> <dot> <+1|-1>
//   link <comp> <comp> <int>
inline DiagramTranscription parse_transcription(std::istream& in) {
  DiagramTranscription d;
  std::map<std::string, std::size_t> comp_index;
  std::string raw;
  int line = 0;
  auto to_int = [&](const std::string& s) -> long long {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument("x");
      return v;
    } catch (const std::exception&) {
      throw ParseError("expected an integer, got '" + s + "'", line);
    }
  };
  while (std::getline(in, raw)) {
    ++line;
    auto toks = split_ws(strip_comment(raw));
    if (toks.empty()) continue;
    const auto& kw = toks[0];
    if (kw == "dot") {
      if (toks.size() != 2) throw ParseError("expected 'dot <id>'", line);
      for (const auto& x : d.dotted)
        if (x == toks[1]) throw ParseError("duplicate dotted circle '" + toks[1] + "'", line);
      d.dotted.push_back(toks[1]);
    } else if (kw == "comp") {
      if (toks.size() != 3 || toks[2].rfind("framing=", 0) != 0)
        throw ParseError("expected 'comp <id> framing=<int|fiber>'", line);
      if (comp_index.count(toks[1])) throw ParseError("duplicate component '" + toks[1] + "'", line);
      DiagramComponent c{toks[1], FiberFraming{}, {}};
      auto fr = toks[2].substr(8);
      if (fr != "fiber") c.framing = to_int(fr);
      comp_index[c.id] = d.components.size();
      d.components.push_back(std::move(c));
    } else if (kw == "pass") {
      if (toks.size() != 4) throw ParseError("expected 'pass <comp> <dot> <+1|-1>'", line);
      auto it = comp_index.find(toks[1]);
      if (it == comp_index.end()) throw ParseError("pass for undeclared component '" + toks[1] + "'", line);
      int s = 0;
      if (toks[3] == "+1" || toks[3] == "1") s = 1;
      else if (toks[3] == "-1") s = -1;
      else throw ParseError("pass sign must be +1 or -1", line);
      d.components[it->second].passes.emplace_back(toks[2], s);
    } else if (kw == "link") {
      if (toks.size() != 4) throw ParseError("expected 'link <comp> <comp> <int>'", line);
      for (int k = 1; k <= 2; ++k)
        if (!comp_index.count(toks[k])) throw ParseError("link to undeclared component '" + toks[k] + "'", line);
      auto key = toks[1] < toks[2] ? std::make_pair(toks[1], toks[2]) : std::make_pair(toks[2], toks[1]);
      d.links[key] = to_int(toks[3]);
    } else {
      throw ParseError("unknown keyword '" + kw + "'", line);
    }
  }
  return d;
}

struct HomologyReport {
  std::array<long long, 5> betti{};
  std::vector<long long> h1_torsion;
  long long chi = 0;
};

inline std::string betti_string(const HomologyReport& r) {
  std::string s;
  for (std::size_t i = 0; i < 5; ++i) s += (i ? "," : "") + std::to_string(r.betti[i]);
  return s;
}

/// Closed oriented cover: b0 = b4 = 1, b3 = b1 by duality, b2 recovered from chi.
inline HomologyReport betti_report(const MtildeModel& m, const ChainPresentation& p) {
  if (!is_closed_base(m.parent().base())) throw InvalidArgument("betti_report needs a closed (S2) base");
  const auto expected = static_cast<std::size_t>(2 * m.fiber().genus);
  if (p.one_handle_count != expected)
    throw CheckFailure("presentation has " + std::to_string(p.one_handle_count) + " 1-handles, cover fiber needs " +
                       std::to_string(expected));
  const auto h1 = h1_from_presentation(p);
  HomologyReport r;
  r.chi = euler_char(m);
  const long long b1 = static_cast<long long>(h1.free_rank);
  const long long b2 = r.chi - 2 + 2 * b1;
  if (b2 < 0) throw CheckFailure("inconsistent presentation: b2 = " + std::to_string(b2) + " < 0");
  r.betti = {1, b1, b2, b1, 1};
  r.h1_torsion = h1.torsion;
  return r;
}

}  // namespace mfib
