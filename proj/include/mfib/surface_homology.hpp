#pragma once

// First homology of the fiber surfaces N_g^b (mod 2, crosscap-core basis) and
// of their orientation double covers Sigma_{g-1}^{2b} (integral, symplectic basis).

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "mfib/error.hpp"

namespace mfib {

struct SurfaceSpec {
  bool orientable = false;
  int genus = 0;
  int boundary_count = 0;

  static SurfaceSpec nonorientable(int g, int b = 0) {
    if (g < 1) throw InvalidArgument("non-orientable surface needs genus >= 1");
    if (b < 0) throw InvalidArgument("negative boundary count");
    return {false, g, b};
  }
  static SurfaceSpec orientable_surface(int g, int b = 0) {
    if (g < 0 || b < 0) throw InvalidArgument("negative genus or boundary count");
    return {true, g, b};
  }

  int euler_characteristic() const {
    return orientable ? 2 - 2 * genus - boundary_count : 2 - genus - boundary_count;
  }

  bool operator==(const SurfaceSpec&) const = default;
};

inline std::string to_string(const SurfaceSpec& s) {
  return std::string(s.orientable ? "S " : "N ") + std::to_string(s.genus) + " " +
         std::to_string(s.boundary_count);
}

inline SurfaceSpec parse_surface_spec(const std::string& text) {
  std::istringstream in(text);
  std::string kind;
  int g = -1, b = -1;
  if (!(in >> kind >> g >> b)) throw ParseError("surface spec must read '<N|S> <genus> <boundary>'");
  std::string rest;
  if (in >> rest) throw ParseError("trailing text in surface spec: " + rest);
  if (kind == "N") return SurfaceSpec::nonorientable(g, b);
  if (kind == "S") return SurfaceSpec::orientable_surface(g, b);
  throw ParseError("surface kind must be N or S, got '" + kind + "'");
}

/// Orientation double cover: N_g^b is covered by Sigma_{g-1}^{2b}.
inline SurfaceSpec double_cover_spec(const SurfaceSpec& s) {
  if (s.orientable) throw InvalidArgument("double_cover_spec: surface is already orientable");
  return SurfaceSpec::orientable_surface(s.genus - 1, 2 * s.boundary_count);
}

enum class Sidedness { OneSided, TwoSided };

inline const char* to_string(Sidedness s) { return s == Sidedness::OneSided ? "one-sided" : "two-sided"; }

/// A class in H_1(N_g; Z/2) written in the crosscap cores mu_1..mu_g.
class Z2Class {
 public:
  Z2Class(SurfaceSpec surface, std::vector<std::uint8_t> coords) : surface_(surface), coords_(std::move(coords)) {
    if (surface_.orientable || surface_.boundary_count != 0)
      throw InvalidArgument("Z2Class lives on a closed non-orientable surface");
    if (static_cast<int>(coords_.size()) != surface_.genus)
      throw InvalidArgument("Z2Class: coordinate count must equal genus");
    for (auto& c : coords_) c &= 1u;
  }

  static Z2Class zero(int genus) { return {SurfaceSpec::nonorientable(genus), std::vector<std::uint8_t>(genus, 0)}; }

  /// Crosscap core mu_i, 1-based.
  static Z2Class core(int genus, int i) {
    if (i < 1 || i > genus) throw InvalidArgument("crosscap index out of range");
    auto z = zero(genus);
    z.coords_[i - 1] = 1;
    return z;
  }

  /// Boundary of a disk enclosing crosscaps in `enclosed` (1-based); its class is the
  /// mod-2 sum of the enclosed cores.
  static Z2Class enclosing(int genus, const std::vector<int>& enclosed) {
    auto z = zero(genus);
    for (int i : enclosed) z = z + core(genus, i);
    return z;
  }

  const SurfaceSpec& surface() const { return surface_; }
  int genus() const { return surface_.genus; }
  const std::vector<std::uint8_t>& coords() const { return coords_; }
  std::uint8_t operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const {
    for (auto c : coords_)
      if (c) return false;
    return true;
  }

  friend Z2Class operator+(const Z2Class& a, const Z2Class& b) {
    if (!(a.surface_ == b.surface_)) throw InvalidArgument("Z2Class: surface mismatch");
    auto out = a;
    for (std::size_t i = 0; i < out.coords_.size(); ++i) out.coords_[i] ^= b.coords_[i];
    return out;
  }
  bool operator==(const Z2Class&) const = default;

 private:
  SurfaceSpec surface_;
  std::vector<std::uint8_t> coords_;
};

inline Z2Class parse_z2_coords(int genus, const std::string& bits) {
  if (static_cast<int>(bits.size()) != genus)
    throw ParseError("expected " + std::to_string(genus) + " coordinate bits, got '" + bits + "'");
  std::vector<std::uint8_t> coords;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ParseError("coordinate bits must be 0 or 1: '" + bits + "'");
    coords.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return {SurfaceSpec::nonorientable(genus), std::move(coords)};
}

inline std::string coords_string(const Z2Class& x) {
  std::string s;
  for (auto c : x.coords()) s.push_back(c ? '1' : '0');
  return s;
}

/// `class g=3 coords=101`
inline std::string to_string(const Z2Class& x) {
  return "class g=" + std::to_string(x.genus()) + " coords=" + coords_string(x);
}

inline Z2Class parse_z2_class(const std::string& text) {
  std::istringstream in(text);
  std::string tag, gfield, cfield;
  if (!(in >> tag >> gfield >> cfield) || tag != "class" || gfield.rfind("g=", 0) != 0 ||
      cfield.rfind("coords=", 0) != 0)
    throw ParseError("class must read 'class g=<g> coords=<bits>'");
  int g = 0;
  try {
    g = std::stoi(gfield.substr(2));
  } catch (const std::exception&) {
    throw ParseError("bad genus field '" + gfield + "'");
  }
  return parse_z2_coords(g, cfield.substr(7));
}

/// Mod-2 intersection form on N_g: sum of x_i y_i.
inline std::uint8_t mod2_pairing(const Z2Class& x, const Z2Class& y) {
  if (!(x.surface() == y.surface())) throw InvalidArgument("mod2_pairing: surface mismatch");
  std::uint8_t acc = 0;
  for (int i = 0; i < x.genus(); ++i) acc ^= static_cast<std::uint8_t>(x[i] & y[i]);
  return acc;
}

inline Sidedness sidedness(const Z2Class& x) {
  if (x.is_zero()) throw InvalidArgument("sidedness: zero class has no embedded representative to classify");
  return mod2_pairing(x, x) == 0 ? Sidedness::TwoSided : Sidedness::OneSided;
}

/// A class in H_1(Sigma_g; Z) in the basis (a_1, b_1, ..., a_g, b_g).
class IntClass {
 public:
  IntClass(SurfaceSpec surface, std::vector<long long> coords) : surface_(surface), coords_(std::move(coords)) {
    if (!surface_.orientable) throw InvalidArgument("IntClass lives on an orientable surface");
    if (static_cast<int>(coords_.size()) != 2 * surface_.genus)
      throw InvalidArgument("IntClass: coordinate count must be 2*genus");
  }

  static IntClass zero(int genus) {
    return {SurfaceSpec::orientable_surface(genus), std::vector<long long>(2 * genus, 0)};
  }
  static IntClass a(int genus, int i) {
    auto c = zero(genus);
    c.coords_.at(2 * (i - 1)) = 1;
    return c;
  }
  static IntClass b(int genus, int i) {
    auto c = zero(genus);
    c.coords_.at(2 * (i - 1) + 1) = 1;
    return c;
  }

  const SurfaceSpec& surface() const { return surface_; }
  int genus() const { return surface_.genus; }
  const std::vector<long long>& coords() const { return coords_; }
  long long operator[](std::size_t i) const { return coords_[i]; }

  friend IntClass operator+(const IntClass& x, const IntClass& y) {
    if (!(x.surface_ == y.surface_)) throw InvalidArgument("IntClass: surface mismatch");
    auto out = x;
    for (std::size_t i = 0; i < out.coords_.size(); ++i) out.coords_[i] += y.coords_[i];
    return out;
  }
  friend IntClass operator*(long long k, const IntClass& x) {
    auto out = x;
    for (auto& c : out.coords_) c *= k;
    return out;
  }
  friend IntClass operator-(const IntClass& x, const IntClass& y) { return x + (-1) * y; }
  IntClass operator-() const { return (-1) * *this; }
  bool operator==(const IntClass&) const = default;

 private:
  SurfaceSpec surface_;
  std::vector<long long> coords_;
};

/// a^T J b with J = diag([[0,1],[-1,0]], ...), so <a_i, b_i> = 1.
inline long long symplectic_pairing(const IntClass& x, const IntClass& y) {
  if (!(x.surface() == y.surface())) throw InvalidArgument("symplectic_pairing: surface mismatch");
  long long acc = 0;
  for (int i = 0; i < x.genus(); ++i) acc += x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i];
  return acc;
}

}  // namespace mfib
