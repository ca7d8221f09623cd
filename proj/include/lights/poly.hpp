#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lights/field.hpp"

namespace lights {

/// Univariate polynomial over GF(p), coefficients in ascending degree order.
/// Always trimmed: the zero polynomial has no coefficients and no degree.
class Poly {
public:
  explicit Poly(FieldSpec field = FieldSpec{2}) : field_(field) {}
  /// Coefficients are reduced mod p and trailing zeros are dropped.
  Poly(FieldSpec field, std::vector<std::int64_t> ascending);

  static Poly constant(FieldSpec field, std::int64_t c);
  static Poly monomial(FieldSpec field, std::size_t degree, Residue coeff = 1);
  static Poly x(FieldSpec field) { return monomial(field, 1); }

  const FieldSpec& field() const noexcept { return field_; }
  std::optional<std::size_t> degree() const noexcept {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }
  /// Degree, treating the zero polynomial as degree 0. Only for callers that
  /// have already excluded zero or where that convention is intended.
  std::size_t degree_or_zero() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }

  Residue coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }
  Residue leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
  const std::vector<Residue>& coefficients() const noexcept { return coeffs_; }

  Poly monic() const;
  Poly scaled(Residue c) const;
  Residue evaluate(Residue at) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }
  /// Orders by degree, then coefficients from the top down; used as a map key.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

  /// Canonical text: descending terms, e.g. `x^3 + x + 1`, `2*x^2 + 1`, `0`.
  std::string to_string() const;

private:
  void trim();

  FieldSpec field_;
  std::vector<Residue> coeffs_;
};

class PolyParseError : public std::runtime_error {
public:
  PolyParseError(const std::string& msg, std::size_t column)
      : std::runtime_error(msg + " at column " + std::to_string(column)), column_(column) {}
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t column_;
};

/// Parses the canonical text form. Also accepts `-` between terms and terms
/// written in any order; repeated powers are summed.
Poly parse_poly(std::string_view text, FieldSpec field);

struct DivMod {
  Poly quotient;
  Poly remainder;
};

/// Throws std::domain_error when `b` is zero and std::invalid_argument on a field mismatch.
DivMod poly_divmod(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);
Poly poly_pow(const Poly& base, std::size_t exponent);
/// f(x + 1).
Poly poly_shift_one(const Poly& f);

struct Factorization {
  Residue unit = 1;
  std::vector<std::pair<Poly, std::size_t>> factors; // sorted by Poly order
};

inline constexpr std::size_t kFactorDegreeCap = 24;

/// Complete factorization into monic irreducibles. Requires f != 0 and
/// deg f <= kFactorDegreeCap; throws std::domain_error / std::length_error.
Factorization poly_factor(const Poly& f);
Poly expand(const Factorization& fac, FieldSpec field);
std::string to_string(const Factorization& fac);

/// All monic irreducible polynomials of the given degree, in Poly order.
/// Results are cached per (p, degree).
const std::vector<Poly>& monic_irreducibles(FieldSpec field, std::size_t degree);

} // namespace lights
