#pragma once

// Words in the mapping class group of N_g (Dehn twists and standard crosscap
// transpositions u_i) and their action on H_1(N_g; Z/2).
//
// Words are read in application order: the word  x_1 x_2 ... x_k  applies x_1
// first, so rep(w1 * w2) = rep(w2) * rep(w1) on column vectors.

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "mfib/error.hpp"
#include "mfib/int_matrix.hpp"
#include "mfib/surface_homology.hpp"

namespace mfib {

/// g x g matrix over Z/2 acting on column vectors.
class Z2Matrix {
 public:
  explicit Z2Matrix(int n = 0) : n_(n), data_(static_cast<std::size_t>(n) * n, 0) {}
  Z2Matrix(std::initializer_list<std::initializer_list<int>> rows) : n_(static_cast<int>(rows.size())) {
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != n_) throw InvalidArgument("Z2Matrix must be square");
      for (int v : r) data_.push_back(static_cast<std::uint8_t>(v & 1));
    }
  }

  static Z2Matrix identity(int n) {
    Z2Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int size() const { return n_; }
  std::uint8_t& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * n_ + c]; }
  std::uint8_t operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * n_ + c]; }

  friend Z2Matrix operator*(const Z2Matrix& a, const Z2Matrix& b) {
    if (a.n_ != b.n_) throw InvalidArgument("Z2Matrix: size mismatch");
    Z2Matrix out(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k)
        if (a(i, k))
          for (int j = 0; j < a.n_; ++j) out(i, j) ^= b(k, j);
    return out;
  }

  Z2Matrix transpose() const {
    Z2Matrix t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Z2Class apply(const Z2Class& x) const {
    if (x.genus() != n_) throw InvalidArgument("Z2Matrix: class on wrong surface");
    std::vector<std::uint8_t> out(n_, 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out[i] ^= static_cast<std::uint8_t>((*this)(i, j) & x[j]);
    return {x.surface(), out};
  }

  bool is_identity() const { return *this == identity(n_); }
  /// M^T M = I over Z/2, i.e. M preserves the mod-2 intersection form.
  bool is_orthogonal() const { return (transpose() * *this).is_identity(); }

  bool operator==(const Z2Matrix&) const = default;

 private:
  int n_;
  std::vector<std::uint8_t> data_;
};

/// Rows of 0/1 separated by newlines.
inline std::string to_string(const Z2Matrix& m) {
  std::string s;
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      if (j) s.push_back(' ');
      s.push_back(m(i, j) ? '1' : '0');
    }
    s.push_back('\n');
  }
  return s;
}

struct DehnTwist {
  Z2Class curve;
  int handedness = +1;  // orientation bookkeeping only; no mod-2 effect
};

/// Standard crosscap transposition u_i exchanging crosscaps i and i+1.
struct CrosscapTransposition {
  int genus = 0;
  int index = 0;
};

class Generator {
 public:
  static Generator twist(const Z2Class& c, int handedness = +1) {
    if (handedness != 1 && handedness != -1) throw InvalidArgument("handedness must be +1 or -1");
    if (sidedness(c) != Sidedness::TwoSided)
      throw InvalidArgument("Dehn twist along a one-sided class " + to_string(c));
    return Generator(DehnTwist{c, handedness});
  }
  static Generator crosscap(int genus, int i) {
    if (genus < 2 || i < 1 || i > genus - 1)
      throw InvalidArgument("crosscap transposition u_" + std::to_string(i) + " out of range on N_" +
                            std::to_string(genus));
    return Generator(CrosscapTransposition{genus, i});
  }

  int genus() const {
    if (auto* t = std::get_if<DehnTwist>(&g_)) return t->curve.genus();
    return std::get<CrosscapTransposition>(g_).genus;
  }
  bool is_twist() const { return std::holds_alternative<DehnTwist>(g_); }
  const DehnTwist& as_twist() const { return std::get<DehnTwist>(g_); }
  const CrosscapTransposition& as_crosscap() const { return std::get<CrosscapTransposition>(g_); }

  bool operator==(const Generator& o) const {
    if (is_twist() != o.is_twist()) return false;
    if (is_twist()) return as_twist().curve == o.as_twist().curve && as_twist().handedness == o.as_twist().handedness;
    return as_crosscap().genus == o.as_crosscap().genus && as_crosscap().index == o.as_crosscap().index;
  }

 private:
  explicit Generator(std::variant<DehnTwist, CrosscapTransposition> g) : g_(std::move(g)) {}
  std::variant<DehnTwist, CrosscapTransposition> g_;
};

struct WordEntry {
  Generator generator;
  int exponent = 1;
  bool operator==(const WordEntry&) const = default;
};

class MCGWord {
 public:
  MCGWord() = default;
  explicit MCGWord(std::vector<WordEntry> entries) : entries_(std::move(entries)) {
    for (const auto& e : entries_) {
      if (e.exponent != 1 && e.exponent != -1) throw InvalidArgument("word exponents must be +1 or -1");
      if (e.generator.genus() != entries_.front().generator.genus())
        throw InvalidArgument("word mixes generators from different surfaces");
    }
  }
  MCGWord(std::initializer_list<Generator> gens) {
    std::vector<WordEntry> es;
    for (const auto& g : gens) es.push_back({g, 1});
    *this = MCGWord(std::move(es));
  }

  const std::vector<WordEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  MCGWord inverse() const {
    std::vector<WordEntry> inv(entries_.rbegin(), entries_.rend());
    for (auto& e : inv) e.exponent = -e.exponent;
    return MCGWord(std::move(inv));
  }

  /// Concatenation: this word applied first, then `rhs`.
  friend MCGWord operator*(const MCGWord& lhs, const MCGWord& rhs) {
    auto es = lhs.entries_;
    es.insert(es.end(), rhs.entries_.begin(), rhs.entries_.end());
    return MCGWord(std::move(es));
  }

  /// w^{-1} * u_i * w
  static MCGWord conjugated_crosscap(const MCGWord& w, int genus, int i) {
    return w.inverse() * MCGWord{Generator::crosscap(genus, i)} * w;
  }

 private:
  std::vector<WordEntry> entries_;
};

/// Transvection x -> x + <x,c> c for twists; coordinate swap (i, i+1) for u_i.
inline Z2Matrix rep_generator(const Generator& gen) {
  const int g = gen.genus();
  Z2Matrix m = Z2Matrix::identity(g);
  if (gen.is_twist()) {
    const auto& c = gen.as_twist().curve;
    if (sidedness(c) != Sidedness::TwoSided) throw InvalidArgument("rep_generator: one-sided twist class");
    // column j is the image of mu_j: e_j + c_j * c, since <mu_j, c> = c_j
    for (int j = 0; j < g; ++j)
      if (c[j])
        for (int i = 0; i < g; ++i) m(i, j) ^= c[i];
  } else {
    const int i = gen.as_crosscap().index - 1;
    m(i, i) = 0;
    m(i + 1, i + 1) = 0;
    m(i, i + 1) = 1;
    m(i + 1, i) = 1;
  }
  return m;
}

/// Product in application order. The empty word needs a genus to know its size.
inline Z2Matrix rep_word(const MCGWord& w, int genus) {
  Z2Matrix m = Z2Matrix::identity(genus);
  for (const auto& e : w.entries()) {
    if (e.generator.genus() != genus) throw InvalidArgument("rep_word: generator on the wrong surface");
    // every generator matrix is an involution over Z/2, so the exponent has no effect
    m = rep_generator(e.generator) * m;
  }
  return m;
}

inline Z2Matrix rep_word(const MCGWord& w) {
  if (w.empty()) throw InvalidArgument("rep_word: empty word needs an explicit genus");
  return rep_word(w, w.entries().front().generator.genus());
}

/// Boundary curve of the i-th standard one-holed Klein bottle (around crosscaps i, i+1).
/// In the closed-surface relation check its class is taken to be 0.
inline Z2Class klein_boundary_class(int genus, int /*i*/) { return Z2Class::zero(genus); }

/// rep(u_i)^2 == rep(t_delta): the twist along a null-homologous mod-2 class acts trivially.
inline bool check_square_relation(int genus, int i) {
  const auto u = rep_generator(Generator::crosscap(genus, i));
  const auto delta = klein_boundary_class(genus, i);
  // delta is zero, so t_delta acts as the identity matrix
  const Z2Matrix t_delta = delta.is_zero() ? Z2Matrix::identity(genus) : rep_generator(Generator::twist(delta));
  return u * u == t_delta;
}

/// Integral action of o(t_c) = t_{c1} t_{c2}^{-1} on H_1(Sigma_{g-1}; Z).
struct LiftedTwistAction {
  IntMatrix twist_c1;          // x -> x + <x,c1> c1
  IntMatrix inverse_twist_c2;  // x -> x - <x,c2> c2
  IntMatrix composite;         // twist_c1 applied first
};

inline IntMatrix integral_transvection(const IntClass& c, int sign) {
  const int n = 2 * c.genus();
  IntMatrix m = IntMatrix::identity(n);
  for (int j = 0; j < n; ++j) {
    auto basis = IntClass::zero(c.genus());
    auto coords = basis.coords();
    coords[j] = 1;
    const long long p = symplectic_pairing(IntClass(c.surface(), coords), c);
    for (int i = 0; i < n; ++i) m(i, j) += sign * p * c[i];
  }
  return m;
}

inline LiftedTwistAction orientation_lift_twist(const Z2Class& c, const IntClass& lift1, const IntClass& lift2) {
  if (sidedness(c) != Sidedness::TwoSided) throw InvalidArgument("orientation_lift_twist: c must be two-sided");
  const auto cover = double_cover_spec(c.surface());
  if (!(lift1.surface() == cover) || !(lift2.surface() == cover))
    throw InvalidArgument("orientation_lift_twist: lifts must live on " + to_string(cover));
  if (symplectic_pairing(lift1, lift1) != 0 || symplectic_pairing(lift2, lift2) != 0)
    throw InvalidArgument("orientation_lift_twist: lifts must have zero self-pairing");
  LiftedTwistAction out{integral_transvection(lift1, +1), integral_transvection(lift2, -1), {}};
  out.composite = out.inverse_twist_c2 * out.twist_c1;
  return out;
}

// ---------------------------------------------------------------------------
// Text format: one generator per line.
//   fiber N genus=<g>          (header)
//   u <i> [+1|-1]
//   t <bits> <+|-> [+1|-1]
// '#' starts a comment.

inline int parse_exponent(const std::string& tok, int line) {
  if (tok == "1" || tok == "+1") return 1;
  if (tok == "-1") return -1;
  throw ParseError("exponent must be +1 or -1, got '" + tok + "'", line);
}

/// Parses a single generator with optional exponent from whitespace-separated tokens.
inline WordEntry parse_generator_tokens(const std::vector<std::string>& toks, int genus, int line) {
  if (toks.empty()) throw ParseError("empty generator", line);
  try {
    if (toks[0] == "u") {
      if (toks.size() < 2 || toks.size() > 3) throw ParseError("expected 'u <i> [exp]'", line);
      int i = 0;
      std::size_t pos = 0;
      try {
        i = std::stoi(toks[1], &pos);
      } catch (const std::exception&) {
        throw ParseError("bad crosscap index '" + toks[1] + "'", line);
      }
      if (pos != toks[1].size()) throw ParseError("bad crosscap index '" + toks[1] + "'", line);
      int e = toks.size() == 3 ? parse_exponent(toks[2], line) : 1;
      return {Generator::crosscap(genus, i), e};
    }
    if (toks[0] == "t") {
      if (toks.size() < 3 || toks.size() > 4) throw ParseError("expected 't <bits> <+|-> [exp]'", line);
      int hand = 0;
      if (toks[2] == "+") hand = 1;
      else if (toks[2] == "-") hand = -1;
      else throw ParseError("twist handedness must be + or -", line);
      int e = toks.size() == 4 ? parse_exponent(toks[3], line) : 1;
      return {Generator::twist(parse_z2_coords(genus, toks[1]), hand), e};
    }
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidArgument& err) {
    throw ParseError(err.what(), line);
  }
  throw ParseError("unknown generator '" + toks[0] + "'", line);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline std::string strip_comment(const std::string& s) {
  auto p = s.find('#');
  return p == std::string::npos ? s : s.substr(0, p);
}

/// Parses `fiber N genus=<g>`; returns g.
inline int parse_fiber_header(const std::vector<std::string>& toks, int line) {
  if (toks.size() != 3 || toks[0] != "fiber" || toks[1] != "N" || toks[2].rfind("genus=", 0) != 0)
    throw ParseError("expected 'fiber N genus=<g>'", line);
  try {
    std::size_t pos = 0;
    int g = std::stoi(toks[2].substr(6), &pos);
    if (pos != toks[2].size() - 6 || g < 1) throw ParseError("genus must be a positive integer", line);
    return g;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad genus '" + toks[2] + "'", line);
  }
}

struct WordFile {
  int genus = 0;
  MCGWord word;
};

inline WordFile parse_word_file(std::istream& in) {
  WordFile out;
  std::vector<WordEntry> entries;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto toks = split_ws(strip_comment(raw));
    if (toks.empty()) continue;
    if (toks[0] == "fiber") {
      if (out.genus) throw ParseError("duplicate fiber header", line);
      out.genus = parse_fiber_header(toks, line);
      continue;
    }
    if (!out.genus) throw ParseError("generator before 'fiber N genus=<g>' header", line);
    entries.push_back(parse_generator_tokens(toks, out.genus, line));
  }
  if (!out.genus) throw ParseError("missing 'fiber N genus=<g>' header");
  out.word = MCGWord(std::move(entries));
  return out;
}

inline std::string to_string(const Generator& g) {
  if (g.is_twist())
    return "t " + coords_string(g.as_twist().curve) + (g.as_twist().handedness > 0 ? " +" : " -");
  return "u " + std::to_string(g.as_crosscap().index);
}

}  // namespace mfib
