#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lights/matrix.hpp"
#include "lights/poly.hpp"

namespace lights {

/// Dense matrix over GF(p)[x].
class PolyMatrix {
public:
  PolyMatrix(std::size_t rows, std::size_t cols, FieldSpec field)
      : rows_(rows), cols_(cols), field_(field), entries_(rows * cols, Poly(field)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldSpec& field() const noexcept { return field_; }

  Poly& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Poly& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

private:
  std::size_t rows_;
  std::size_t cols_;
  FieldSpec field_;
  std::vector<Poly> entries_;
};

/// Monic invariant factors s_1 | s_2 | ... | s_n of a characteristic matrix.
struct SnfResult {
  FieldSpec field;
  std::vector<Poly> invariant_factors;

  /// Factors other than 1.
  std::vector<Poly> nontrivial() const;
  std::string to_string() const; // comma separated, e.g. "1, 1, x, x, x^3"
};

/// For each monic irreducible p_k dividing the characteristic polynomial, the
/// nonzero exponents of p_k across s_1..s_n in invariant-factor order. These
/// are the Jordan block sizes of every root of p_k.
struct FactorData {
  std::map<Poly, std::vector<std::size_t>> exponents;

  friend bool operator==(const FactorData&, const FactorData&) = default;
};

/// xI - A. Throws std::invalid_argument for non-square A.
PolyMatrix char_matrix(const Matrix& a);

/// Throws std::invalid_argument for a non-square input and std::domain_error
/// when the determinant is zero.
SnfResult smith_normal_form(PolyMatrix m);

SnfResult invariant_factors(const Matrix& a);

Poly charpoly_from_snf(const SnfResult& s);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Characteristic polynomial det(xI - A) computed over the integers without
/// division (Berkowitz), then reduced mod p. Throws std::overflow_error if an
/// intermediate leaves the 64-bit range.
Poly charpoly_oracle(const IntMatrix& a, FieldSpec field);
IntMatrix to_integer(const Matrix& a);

/// Throws std::length_error when an invariant factor is above the factorization cap.
FactorData factor_data(const SnfResult& s);

} // namespace lights
