#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "lights/field.hpp"

namespace lights {

using Vector = std::vector<Residue>;

/// Dense matrix over GF(p).
///
/// Over GF(2) rows are packed 64 entries per machine word and elimination runs
/// on whole words; other primes store one 16-bit residue per entry. The
/// storage choice is invisible through the public interface.
class Matrix {
public:
  Matrix() : Matrix(0, 0, FieldSpec{2}) {}
  Matrix(std::size_t rows, std::size_t cols, FieldSpec field);

  static Matrix identity(std::size_t n, FieldSpec field);
  /// Entries are reduced mod p, so negative integers are accepted.
  static Matrix from_rows(FieldSpec field,
                          std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static Matrix from_rows(FieldSpec field, const std::vector<std::vector<std::int64_t>>& rows);
  static Matrix column(FieldSpec field, const Vector& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldSpec& field() const noexcept { return field_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Residue at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, Residue v);

  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;

  Matrix transpose() const;
  bool is_zero() const;
  bool is_symmetric() const;

  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator*(const Matrix& rhs) const;
  Vector operator*(const Vector& v) const;

  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

private:
  friend struct MatrixAccess;

  std::size_t rows_;
  std::size_t cols_;
  FieldSpec field_;
  std::size_t words_per_row_ = 0; // binary storage only
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint16_t> residues_;
};

struct RankProfile {
  std::size_t rank = 0;
  std::size_t nullity = 0;
  std::vector<std::size_t> pivot_columns;
};

struct RrefResult {
  Matrix echelon;
  RankProfile profile;
};

/// Reduced row-echelon form. Pivots are taken column by column, left to right,
/// using the first row at or below the current pivot row with a nonzero entry.
RrefResult rref(const Matrix& m);
RankProfile rank_nullity(const Matrix& m);

/// A particular solution of Mx = b, or nullopt when b is outside the column space.
/// Free variables are set to zero.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/// One basis vector per free column of rref(M), with a 1 in that column.
std::vector<Vector> kernel_basis(const Matrix& m);

Matrix kronecker(const Matrix& a, const Matrix& b);

/// I_n (x) A - B^T (x) I_m, the matrix of X -> AX - XB on column-stacked X:
/// entry (i, j) of X lives at index j*m + i.
Matrix sylvester_operator(const Matrix& a, const Matrix& b);

/// Column-stacking vectorization and its inverse.
Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, std::size_t rows, std::size_t cols, FieldSpec field);

} // namespace lights
