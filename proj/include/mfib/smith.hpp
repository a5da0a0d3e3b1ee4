#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "mfib/error.hpp"
#include "mfib/int_matrix.hpp"

namespace mfib {

struct SmithForm {
  std::vector<long long> factors;  // nonzero invariant factors d_1 | d_2 | ..., all >= 1
  std::size_t rank = 0;
  bool operator==(const SmithForm&) const = default;
};

namespace detail {

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw NumericError("integer overflow in Smith normal form");
  return r;
}
inline long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw NumericError("integer overflow in Smith normal form");
  return r;
}

}  // namespace detail

namespace detail {

/// Nearest-integer quotient, keeps remainders within half the pivot.
inline long long round_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  if (2 * std::llabs(r) > std::llabs(b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
  return q;
}

}  // namespace detail

/// Diagonalizes `a` by unimodular row and column operations. The pivot is re-chosen as the
/// smallest nonzero entry of the trailing block on every pass, which keeps entry growth in check.
inline SmithForm smith_normal_form(IntMatrix a) {
  using detail::checked_mul;
  using detail::checked_sub;
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<long long> diag;
  for (std::size_t t = 0; t < m && t < n; ++t) {
    while (true) {
      std::size_t pr = m, pc = n;
      long long best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          long long v = std::llabs(a(i, j));
          if (v != 0 && (best == 0 || v < best)) best = v, pr = i, pc = j;
        }
      if (best == 0) return {diag, diag.size()};
      for (std::size_t j = 0; j < n; ++j) std::swap(a(t, j), a(pr, j));
      for (std::size_t i = 0; i < m; ++i) std::swap(a(i, t), a(i, pc));

      const long long p = a(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        const long long q = detail::round_div(a(i, t), p);
        for (std::size_t j = t; j < n; ++j) a(i, j) = checked_sub(a(i, j), checked_mul(q, a(t, j)));
        clean = clean && a(i, t) == 0;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        const long long q = detail::round_div(a(t, j), p);
        for (std::size_t i = t; i < m; ++i) a(i, j) = checked_sub(a(i, j), checked_mul(q, a(i, t)));
        clean = clean && a(t, j) == 0;
      }
      if (!clean) continue;
      // divisibility: the pivot must divide the whole trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % p != 0) {
            for (std::size_t k = t; k < n; ++k) a(t, k) = checked_sub(a(t, k), -a(i, k));
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(std::llabs(a(t, t)));
  }
  return {diag, diag.size()};
}

struct H1Decomposition {
  std::size_t free_rank = 0;
  std::vector<long long> torsion;  // invariant factors > 1
  bool operator==(const H1Decomposition&) const = default;
};

/// Cokernel of `relations`, an n1 x k matrix whose columns are relations on n1 generators.
inline H1Decomposition cokernel(const IntMatrix& relations, std::size_t generators) {
  if (relations.rows() != generators && !(relations.cols() == 0))
    throw InvalidArgument("cokernel: relation matrix row count must equal the generator count");
  H1Decomposition out;
  SmithForm snf = relations.cols() == 0 ? SmithForm{} : smith_normal_form(relations);
  out.free_rank = generators - snf.rank;
  for (long long d : snf.factors)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

inline std::string to_string(const H1Decomposition& h) {
  std::string s;
  if (h.free_rank == 1) s = "Z";
  else if (h.free_rank > 1) s = "Z^" + std::to_string(h.free_rank);
  for (long long d : h.torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + std::to_string(d);
  return s.empty() ? "0" : s;
}

}  // namespace mfib
