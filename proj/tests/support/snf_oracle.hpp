#pragma once

// Independent invariant-factor oracle: d_k = D_k / D_{k-1}, where D_k is the gcd of all k x k minors.

#include <numeric>
#include <vector>

#include "mfib/int_matrix.hpp"

namespace mfib::oracle {

inline long long det_minor(const IntMatrix& a, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols) {
  const std::size_t k = rows.size();
  if (k == 1) return a(rows[0], cols[0]);
  long long acc = 0;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::size_t> sub_r(rows.begin() + 1, rows.end()), sub_c;
    for (std::size_t c = 0; c < k; ++c)
      if (c != j) sub_c.push_back(cols[c]);
    const long long term = a(rows[0], cols[j]) * det_minor(a, sub_r, sub_c);
    acc += (j % 2 ? -term : term);
  }
  return acc;
}

inline void for_each_subset(std::size_t n, std::size_t k, std::vector<std::size_t>& cur, std::size_t start,
                            const auto& f) {
  if (cur.size() == k) {
    f(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    for_each_subset(n, k, cur, i + 1, f);
    cur.pop_back();
  }
}

inline std::vector<long long> determinantal_factors(const IntMatrix& a) {
  std::vector<long long> out;
  long long prev = 1;
  const std::size_t kmax = std::min(a.rows(), a.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    long long g = 0;
    std::vector<std::size_t> r, c;
    for_each_subset(a.rows(), k, r, 0, [&](const std::vector<std::size_t>& rows) {
      std::vector<std::size_t> c2;
      for_each_subset(a.cols(), k, c2, 0,
                      [&](const std::vector<std::size_t>& cols) { g = std::gcd(g, det_minor(a, rows, cols)); });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace mfib::oracle
