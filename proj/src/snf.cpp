#include "lights/snf.hpp"

#include <optional>
#include <stdexcept>

namespace lights {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("charpoly_oracle: overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("charpoly_oracle: overflow");
  return out;
}

std::int64_t checked_neg(std::int64_t a) { return checked_mul(a, -1); }

void swap_rows(PolyMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(a, c), m.at(b, c));
}

void swap_cols(PolyMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m.at(r, a), m.at(r, b));
}

// Minimum-degree nonzero entry of the trailing block starting at (t, t);
// ties go to the smallest (row, column).
std::optional<std::pair<std::size_t, std::size_t>> find_pivot(const PolyMatrix& m, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  std::size_t best_degree = 0;
  for (std::size_t r = t; r < m.rows(); ++r)
    for (std::size_t c = t; c < m.cols(); ++c) {
      const Poly& e = m.at(r, c);
      if (e.is_zero()) continue;
      if (!best || *e.degree() < best_degree) {
        best = {r, c};
        best_degree = *e.degree();
      }
    }
  return best;
}

// Clears row t and column t against the pivot by Euclidean division.
// Returns true when every division was exact.
bool reduce_cross(PolyMatrix& m, std::size_t t) {
  const std::size_t n = m.rows();
  bool exact = true;
  for (std::size_t r = t + 1; r < n; ++r) {
    if (m.at(r, t).is_zero()) continue;
    auto [q, rem] = poly_divmod(m.at(r, t), m.at(t, t));
    if (!rem.is_zero()) exact = false;
    for (std::size_t c = t; c < n; ++c)
      if (!m.at(t, c).is_zero()) m.at(r, c) -= q * m.at(t, c);
  }
  for (std::size_t c = t + 1; c < n; ++c) {
    if (m.at(t, c).is_zero()) continue;
    auto [q, rem] = poly_divmod(m.at(t, c), m.at(t, t));
    if (!rem.is_zero()) exact = false;
    for (std::size_t r = t; r < n; ++r)
      if (!m.at(r, t).is_zero()) m.at(r, c) -= q * m.at(r, t);
  }
  return exact;
}

} // namespace

std::vector<Poly> SnfResult::nontrivial() const {
  std::vector<Poly> out;
  for (const auto& s : invariant_factors)
    if (!s.is_one()) out.push_back(s);
  return out;
}

std::string SnfResult::to_string() const {
  std::string out;
  for (const auto& s : invariant_factors) {
    if (!out.empty()) out += ", ";
    out += s.to_string();
  }
  return out;
}

PolyMatrix char_matrix(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("char_matrix: matrix must be square");
  const FieldSpec& f = a.field();
  PolyMatrix out(a.rows(), a.cols(), f);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const auto entry = static_cast<std::int64_t>(f.neg(a.at(r, c)));
      out.at(r, c) = r == c ? Poly(f, {entry, 1}) : Poly(f, {entry});
    }
  return out;
}

SnfResult smith_normal_form(PolyMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("smith_normal_form: matrix must be square");
  const std::size_t n = m.rows();
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      const auto pivot = find_pivot(m, t);
      if (!pivot) throw std::domain_error("smith_normal_form: determinant is zero");
      swap_rows(m, t, pivot->first);
      swap_cols(m, t, pivot->second);
      if (!reduce_cross(m, t)) continue;

      // Pivot must divide the whole trailing block; otherwise fold the offending
      // row into the pivot row and go again with a smaller remainder.
      std::optional<std::size_t> offending;
      for (std::size_t r = t + 1; r < n && !offending; ++r)
        for (std::size_t c = t + 1; c < n; ++c)
          if (!m.at(r, c).is_zero() && !poly_divmod(m.at(r, c), m.at(t, t)).remainder.is_zero()) {
            offending = r;
            break;
          }
      if (!offending) break;
      for (std::size_t c = t; c < n; ++c) m.at(t, c) += m.at(*offending, c);
    }
  }
  SnfResult out{m.field(), {}};
  out.invariant_factors.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.invariant_factors.push_back(m.at(i, i).monic());
  return out;
}

SnfResult invariant_factors(const Matrix& a) { return smith_normal_form(char_matrix(a)); }

Poly charpoly_from_snf(const SnfResult& s) {
  Poly out = Poly::constant(s.field, 1);
  for (const auto& f : s.invariant_factors) out = out * f;
  return out.monic();
}

Poly charpoly_oracle(const IntMatrix& a, FieldSpec field) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("charpoly_oracle: matrix must be square");
  if (n == 0) return Poly::constant(field, 1);

  // coefficients of det(xI - A_r) for the leading r x r block, highest degree first
  std::vector<std::int64_t> coeffs{1, checked_neg(a[0][0])};
  for (std::size_t r = 1; r < n; ++r) {
    // first column of the Toeplitz factor: 1, -a_rr, -R C, -R M C, ..., -R M^{r-1} C
    std::vector<std::int64_t> toeplitz(r + 2);
    toeplitz[0] = 1;
    toeplitz[1] = checked_neg(a[r][r]);
    std::vector<std::int64_t> w(r);
    for (std::size_t i = 0; i < r; ++i) w[i] = a[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      std::int64_t dot = 0;
      for (std::size_t j = 0; j < r; ++j) dot = checked_add(dot, checked_mul(a[r][j], w[j]));
      toeplitz[k + 2] = checked_neg(dot);
      if (k + 1 == r) break;
      std::vector<std::int64_t> next(r, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) next[i] = checked_add(next[i], checked_mul(a[i][j], w[j]));
      w = std::move(next);
    }
    std::vector<std::int64_t> next(r + 2, 0);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j)
        next[i] = checked_add(next[i], checked_mul(toeplitz[i - j], coeffs[j]));
    coeffs = std::move(next);
  }
  return Poly(field, std::vector<std::int64_t>(coeffs.rbegin(), coeffs.rend()));
}

IntMatrix to_integer(const Matrix& a) {
  IntMatrix out(a.rows(), std::vector<std::int64_t>(a.cols(), 0));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[r][c] = a.at(r, c);
  return out;
}

FactorData factor_data(const SnfResult& s) {
  FactorData out;
  for (const auto& inv : s.invariant_factors) {
    if (inv.is_constant()) continue;
    for (const auto& [q, e] : poly_factor(inv).factors) out.exponents[q].push_back(e);
  }
  return out;
}

} // namespace lights
