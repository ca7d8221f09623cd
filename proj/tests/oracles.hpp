#pragma once

// Brute-force references used only by the test suites. Nothing here calls the
// library's elimination or Smith-form code.

#include <cstdint>
#include <functional>
#include <vector>

#include "lights/matrix.hpp"
#include "lights/poly.hpp"

namespace oracle {

using IntRows = std::vector<std::vector<std::int64_t>>;

inline IntRows rows_of(const lights::Matrix& m) {
  IntRows out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.at(r, c);
  return out;
}

inline std::int64_t modp(std::int64_t v, std::int64_t p) { return ((v % p) + p) % p; }

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  // Fermat; p is prime and small in tests
  std::int64_t result = 1, base = modp(a, p), e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

/// Textbook row reduction on plain integers mod p.
inline std::size_t naive_rank(IntRows a, std::int64_t p) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && modp(a[piv][c], p) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const std::int64_t inv = inv_mod(a[rank][c], p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const std::int64_t f = modp(a[r][c], p) * inv % p;
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = modp(a[r][k] - f * a[rank][k], p);
    }
    ++rank;
  }
  return rank;
}

/// Counts X in GF(p)^{m x n} with AX - XB = 0 by enumeration.
inline std::size_t count_sylvester_kernel(const IntRows& a, const IntRows& b, std::int64_t p) {
  const std::size_t m = a.size(), n = b.size();
  const std::size_t cells = m * n;
  std::vector<std::int64_t> x(cells, 0);
  std::size_t count = 0;
  for (;;) {
    bool zero = true;
    for (std::size_t i = 0; i < m && zero; ++i)
      for (std::size_t j = 0; j < n && zero; ++j) {
        std::int64_t v = 0;
        for (std::size_t k = 0; k < m; ++k) v += a[i][k] * x[k * n + j];
        for (std::size_t l = 0; l < n; ++l) v -= x[i * n + l] * b[l][j];
        zero = modp(v, p) == 0;
      }
    count += zero;
    std::size_t idx = 0;
    while (idx < cells && ++x[idx] == p) x[idx++] = 0;
    if (idx == cells) break;
  }
  return count;
}

inline std::size_t log_p(std::size_t count, std::size_t p) {
  std::size_t e = 0;
  while (count > 1) {
    count /= p;
    ++e;
  }
  return e;
}

/// Every monic polynomial of the given degree.
inline std::vector<lights::Poly> monic_of_degree(lights::FieldSpec f, std::size_t degree) {
  std::vector<lights::Poly> out;
  std::vector<std::int64_t> low(degree, 0);
  for (;;) {
    auto c = low;
    c.push_back(1);
    out.emplace_back(f, c);
    std::size_t i = 0;
    while (i < degree && ++low[i] == static_cast<std::int64_t>(f.modulus())) low[i++] = 0;
    if (i == degree) break;
  }
  return out;
}

/// Determinant of a small polynomial matrix by cofactor expansion.
inline lights::Poly poly_det(const std::vector<std::vector<lights::Poly>>& m, lights::FieldSpec f) {
  const std::size_t n = m.size();
  if (n == 0) return lights::Poly::constant(f, 1);
  if (n == 1) return m[0][0];
  lights::Poly det(f);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<lights::Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      auto& row = minor.emplace_back();
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
    }
    lights::Poly term = m[0][c] * poly_det(minor, f);
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

/// Calls fn on every k-subset of {0..n-1}.
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

} // namespace oracle
