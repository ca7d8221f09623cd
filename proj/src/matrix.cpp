#include "lights/matrix.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace lights {

namespace {

constexpr std::size_t kWordBits = 64;

void require_same_field(const Matrix& a, const Matrix& b, const char* what) {
  if (!(a.field() == b.field()))
    throw std::invalid_argument(std::string(what) + ": field mismatch (" + a.field().name() +
                                " vs " + b.field().name() + ")");
}

} // namespace

// Word-level access for the elimination kernels below.
struct MatrixAccess {
  static std::uint64_t* row_words(Matrix& m, std::size_t r) {
    return m.bits_.data() + r * m.words_per_row_;
  }
  static const std::uint64_t* row_words(const Matrix& m, std::size_t r) {
    return m.bits_.data() + r * m.words_per_row_;
  }
  static std::size_t words(const Matrix& m) { return m.words_per_row_; }
  static std::uint16_t* row_residues(Matrix& m, std::size_t r) {
    return m.residues_.data() + r * m.cols_;
  }

  static RrefResult rref_binary(const Matrix& m) {
    Matrix out = m;
    const std::size_t words = out.words_per_row_;
    RankProfile profile;
    std::size_t prow = 0;
    for (std::size_t c = 0; c < out.cols_ && prow < out.rows_; ++c) {
      const std::size_t word = c / kWordBits;
      const std::uint64_t mask = std::uint64_t{1} << (c % kWordBits);
      std::size_t r = prow;
      while (r < out.rows_ && !(row_words(out, r)[word] & mask)) ++r;
      if (r == out.rows_) continue;
      if (r != prow)
        std::swap_ranges(row_words(out, r), row_words(out, r) + words, row_words(out, prow));
      const std::uint64_t* pivot = row_words(out, prow);
      for (std::size_t r2 = 0; r2 < out.rows_; ++r2) {
        if (r2 == prow) continue;
        std::uint64_t* target = row_words(out, r2);
        if (!(target[word] & mask)) continue;
        for (std::size_t w = word; w < words; ++w) target[w] ^= pivot[w];
      }
      profile.pivot_columns.push_back(c);
      ++prow;
    }
    profile.rank = prow;
    profile.nullity = out.cols_ - prow;
    return {std::move(out), std::move(profile)};
  }

  static RrefResult rref_general(const Matrix& m) {
    Matrix out = m;
    const FieldSpec& f = out.field_;
    const std::size_t cols = out.cols_;
    RankProfile profile;
    std::size_t prow = 0;
    for (std::size_t c = 0; c < cols && prow < out.rows_; ++c) {
      std::size_t r = prow;
      while (r < out.rows_ && row_residues(out, r)[c] == 0) ++r;
      if (r == out.rows_) continue;
      if (r != prow)
        std::swap_ranges(row_residues(out, r), row_residues(out, r) + cols,
                         row_residues(out, prow));
      std::uint16_t* pivot = row_residues(out, prow);
      const Residue scale = f.inv(pivot[c]);
      for (std::size_t k = c; k < cols; ++k)
        pivot[k] = static_cast<std::uint16_t>(f.mul(pivot[k], scale));
      for (std::size_t r2 = 0; r2 < out.rows_; ++r2) {
        if (r2 == prow) continue;
        std::uint16_t* target = row_residues(out, r2);
        const Residue factor = target[c];
        if (factor == 0) continue;
        for (std::size_t k = c; k < cols; ++k)
          target[k] = static_cast<std::uint16_t>(f.sub(target[k], f.mul(factor, pivot[k])));
      }
      profile.pivot_columns.push_back(c);
      ++prow;
    }
    profile.rank = prow;
    profile.nullity = cols - prow;
    return {std::move(out), std::move(profile)};
  }
};

Matrix::Matrix(std::size_t rows, std::size_t cols, FieldSpec field)
    : rows_(rows), cols_(cols), field_(field) {
  if (field_.is_binary()) {
    words_per_row_ = (cols + kWordBits - 1) / kWordBits;
    bits_.assign(rows * words_per_row_, 0);
  } else {
    residues_.assign(rows * cols, 0);
  }
}

Matrix Matrix::identity(std::size_t n, FieldSpec field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(FieldSpec field,
                         std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<std::vector<std::int64_t>> copy;
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(field, copy);
}

Matrix Matrix::from_rows(FieldSpec field, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols, field);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, field.reduce(rows[r][c]));
  }
  return m;
}

Matrix Matrix::column(FieldSpec field, const Vector& v) {
  Matrix m(v.size(), 1, field);
  for (std::size_t r = 0; r < v.size(); ++r) m.set(r, 0, v[r] % field.modulus());
  return m;
}

Residue Matrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  if (field_.is_binary())
    return static_cast<Residue>((bits_[r * words_per_row_ + c / kWordBits] >> (c % kWordBits)) & 1u);
  return residues_[r * cols_ + c];
}

void Matrix::set(std::size_t r, std::size_t c, Residue v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  if (v >= field_.modulus()) throw std::invalid_argument("residue out of range");
  if (field_.is_binary()) {
    std::uint64_t& word = bits_[r * words_per_row_ + c / kWordBits];
    const std::uint64_t mask = std::uint64_t{1} << (c % kWordBits);
    word = v ? (word | mask) : (word & ~mask);
  } else {
    residues_[r * cols_ + c] = static_cast<std::uint16_t>(v);
  }
}

Vector Matrix::row(std::size_t r) const {
  Vector out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = at(r, c);
  return out;
}

Vector Matrix::col(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (Residue v = at(r, c)) t.set(c, r, v);
  return t;
}

bool Matrix::is_zero() const {
  if (field_.is_binary())
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
  return std::all_of(residues_.begin(), residues_.end(), [](std::uint16_t v) { return v == 0; });
}

bool Matrix::is_symmetric() const { return is_square() && *this == transpose(); }

Matrix Matrix::operator+(const Matrix& rhs) const {
  require_same_field(*this, rhs, "matrix addition");
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix addition: dimension mismatch");
  Matrix out = *this;
  if (field_.is_binary()) {
    for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] ^= rhs.bits_[i];
  } else {
    for (std::size_t i = 0; i < residues_.size(); ++i)
      out.residues_[i] = static_cast<std::uint16_t>(field_.add(residues_[i], rhs.residues_[i]));
  }
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  require_same_field(*this, rhs, "matrix subtraction");
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix subtraction: dimension mismatch");
  if (field_.is_binary()) return *this + rhs;
  Matrix out = *this;
  for (std::size_t i = 0; i < residues_.size(); ++i)
    out.residues_[i] = static_cast<std::uint16_t>(field_.sub(residues_[i], rhs.residues_[i]));
  return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  require_same_field(*this, rhs, "matrix product");
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  Matrix out(rows_, rhs.cols_, field_);
  if (field_.is_binary()) {
    const std::size_t words = out.words_per_row_;
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t* dst = MatrixAccess::row_words(out, i);
      for (std::size_t k = 0; k < cols_; ++k) {
        if (!at(i, k)) continue;
        const std::uint64_t* src = MatrixAccess::row_words(rhs, k);
        for (std::size_t w = 0; w < words; ++w) dst[w] ^= src[w];
      }
    }
    return out;
  }
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Residue a = residues_[i * cols_ + k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        auto& dst = out.residues_[i * rhs.cols_ + j];
        dst = static_cast<std::uint16_t>(
            field_.add(dst, field_.mul(a, rhs.residues_[k * rhs.cols_ + j])));
      }
    }
  return out;
}

Vector Matrix::operator*(const Vector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  Vector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Residue acc = 0;
    for (std::size_t c = 0; c < cols_; ++c)
      acc = field_.add(acc, field_.mul(at(r, c), v[c] % field_.modulus()));
    out[r] = acc;
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.bits_ == b.bits_ && a.residues_ == b.residues_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c);
    os << '\n';
  }
  return os.str();
}

RrefResult rref(const Matrix& m) {
  return m.field().is_binary() ? MatrixAccess::rref_binary(m) : MatrixAccess::rref_general(m);
}

RankProfile rank_nullity(const Matrix& m) { return rref(m).profile; }

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows())
    throw std::invalid_argument("solve: right-hand side has " + std::to_string(b.size()) +
                                " entries, expected " + std::to_string(m.rows()));
  const FieldSpec& f = m.field();
  Matrix augmented(m.rows(), m.cols() + 1, f);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (Residue v = m.at(r, c)) augmented.set(r, c, v);
    augmented.set(r, m.cols(), b[r] % f.modulus());
  }
  const auto [echelon, profile] = rref(augmented);
  if (!profile.pivot_columns.empty() && profile.pivot_columns.back() == m.cols())
    return std::nullopt;
  Vector x(m.cols(), 0);
  for (std::size_t k = 0; k < profile.rank; ++k)
    x[profile.pivot_columns[k]] = echelon.at(k, m.cols());
  return x;
}

std::vector<Vector> kernel_basis(const Matrix& m) {
  const auto [echelon, profile] = rref(m);
  const FieldSpec& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : profile.pivot_columns) is_pivot[c] = true;

  std::vector<Vector> basis;
  basis.reserve(profile.nullity);
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t k = 0; k < profile.rank; ++k)
      v[profile.pivot_columns[k]] = f.neg(echelon.at(k, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "kronecker");
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
  const FieldSpec& f = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Residue s = a.at(i, j);
      if (s == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (Residue v = b.at(k, l)) out.set(i * b.rows() + k, j * b.cols() + l, f.mul(s, v));
    }
  return out;
}

Matrix sylvester_operator(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "sylvester_operator");
  if (!a.is_square() || !b.is_square())
    throw std::invalid_argument("sylvester_operator: A and B must be square");
  const FieldSpec& f = a.field();
  const std::size_t m = a.rows();
  const std::size_t n = b.rows();
  Matrix op(m * n, m * n, f);
  // (AX - XB)[i, j] = sum_k A[i, k] X[k, j] - sum_l X[i, l] B[l, j]
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t row = j * m + i;
      for (std::size_t k = 0; k < m; ++k)
        if (Residue v = a.at(i, k)) op.set(row, j * m + k, v);
      for (std::size_t l = 0; l < n; ++l)
        if (Residue v = b.at(l, j)) {
          const std::size_t col = l * m + i;
          op.set(row, col, f.sub(op.at(row, col), v));
        }
    }
  return op;
}

Vector vec(const Matrix& x) {
  Vector out;
  out.reserve(x.rows() * x.cols());
  for (std::size_t c = 0; c < x.cols(); ++c)
    for (std::size_t r = 0; r < x.rows(); ++r) out.push_back(x.at(r, c));
  return out;
}

Matrix unvec(const Vector& v, std::size_t rows, std::size_t cols, FieldSpec field) {
  if (v.size() != rows * cols) throw std::invalid_argument("unvec: size mismatch");
  Matrix out(rows, cols, field);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r)
      if (Residue e = v[c * rows + r] % field.modulus()) out.set(r, c, e);
  return out;
}

} // namespace lights
