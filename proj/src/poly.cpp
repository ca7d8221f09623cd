#include "lights/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

namespace lights {

namespace {

void require_same_field(const Poly& a, const Poly& b, const char* what) {
  if (!(a.field() == b.field()))
    throw std::invalid_argument(std::string(what) + ": field mismatch");
}

// Enumerates monic polynomials of one degree in base-p counter order.
class MonicCounter {
public:
  MonicCounter(FieldSpec field, std::size_t degree) : field_(field), low_(degree, 0) {}

  Poly current() const {
    std::vector<std::int64_t> c(low_.begin(), low_.end());
    c.push_back(1);
    return Poly(field_, std::move(c));
  }
  bool advance() {
    for (auto& digit : low_) {
      if (++digit < field_.modulus()) return true;
      digit = 0;
    }
    return false;
  }

private:
  FieldSpec field_;
  std::vector<Residue> low_;
};

// Number of monic candidates of this degree, saturating at `limit + 1`.
std::uint64_t candidate_count(std::uint32_t p, std::size_t degree, std::uint64_t limit) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < degree; ++i) {
    count *= p;
    if (count > limit) return limit + 1;
  }
  return count;
}

constexpr std::uint64_t kSieveLimit = 1u << 16;
constexpr std::uint64_t kSearchLimit = 1u << 26;

bool divides(const Poly& d, const Poly& f) { return poly_divmod(f, d).remainder.is_zero(); }

// Removes every power of `q` from `rest`, returning the multiplicity.
std::size_t strip(Poly& rest, const Poly& q) {
  std::size_t e = 0;
  for (;;) {
    auto [quot, rem] = poly_divmod(rest, q);
    if (!rem.is_zero()) return e;
    rest = std::move(quot);
    ++e;
  }
}

} // namespace

Poly::Poly(FieldSpec field, std::vector<std::int64_t> ascending) : field_(field) {
  coeffs_.reserve(ascending.size());
  for (auto c : ascending) coeffs_.push_back(field_.reduce(c));
  trim();
}

Poly Poly::constant(FieldSpec field, std::int64_t c) { return Poly(field, {c}); }

Poly Poly::monomial(FieldSpec field, std::size_t degree, Residue coeff) {
  Poly out(field);
  coeff %= field.modulus();
  if (coeff == 0) return out;
  out.coeffs_.assign(degree + 1, 0);
  out.coeffs_[degree] = coeff;
  return out;
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::monic() const {
  if (is_zero() || leading() == 1) return *this;
  return scaled(field_.inv(leading()));
}

Poly Poly::scaled(Residue c) const {
  Poly out(field_);
  c %= field_.modulus();
  if (c == 0) return out;
  out.coeffs_.reserve(coeffs_.size());
  for (auto a : coeffs_) out.coeffs_.push_back(field_.mul(a, c));
  return out;
}

Residue Poly::evaluate(Residue at) const {
  Residue acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = field_.add(field_.mul(acc, at), *it);
  return acc;
}

Poly Poly::operator-() const { return scaled(field_.neg(1)); }

Poly& Poly::operator+=(const Poly& rhs) {
  require_same_field(*this, rhs, "poly addition");
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
    coeffs_[i] = field_.add(coeffs_[i], rhs.coeffs_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  require_same_field(*this, rhs, "poly subtraction");
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
    coeffs_[i] = field_.sub(coeffs_[i], rhs.coeffs_[i]);
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_field(a, b, "poly product");
  Poly out(a.field_);
  if (a.is_zero() || b.is_zero()) return out;
  const FieldSpec& f = a.field_;
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out.coeffs_[i + j] = f.add(out.coeffs_[i + j], f.mul(a.coeffs_[i], b.coeffs_[j]));
  }
  out.trim();
  return out;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.field_.modulus() <=> b.field_.modulus(); c != 0) return c;
  if (auto c = a.coeffs_.size() <=> b.coeffs_.size(); c != 0) return c;
  for (std::size_t i = a.coeffs_.size(); i-- > 0;)
    if (auto c = a.coeffs_[i] <=> b.coeffs_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Residue c = coeffs_[i];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += "x";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Poly parse_poly(std::string_view text, FieldSpec field) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& msg) -> PolyParseError {
    return PolyParseError(msg, pos + 1);
  };
  auto read_uint = [&]() -> std::uint64_t {
    const std::size_t start = pos;
    std::uint64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (v > (std::uint64_t{1} << 40)) throw fail("number too large");
      ++pos;
    }
    if (pos == start) throw fail("expected a number");
    return v;
  };

  std::map<std::size_t, std::int64_t> terms;
  bool negative = false;
  skip_ws();
  if (pos == text.size()) throw fail("empty polynomial");
  if (text[pos] == '-') {
    negative = true;
    ++pos;
  }
  while (true) {
    skip_ws();
    if (pos == text.size()) throw fail("expected a term");
    std::int64_t coeff = 1;
    std::size_t power = 0;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = static_cast<std::int64_t>(read_uint() % field.modulus());
      have_coeff = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws();
        if (pos == text.size() || text[pos] != 'x') throw fail("expected 'x' after '*'");
      }
    }
    if (pos < text.size() && text[pos] == 'x') {
      ++pos;
      power = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip_ws();
        power = static_cast<std::size_t>(read_uint());
        if (power > 4096) throw fail("exponent too large");
      }
    } else if (!have_coeff) {
      throw fail("expected a coefficient or 'x'");
    }
    terms[power] += negative ? -coeff : coeff;
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] == '+' || text[pos] == '-') {
      negative = text[pos] == '-';
      ++pos;
      continue;
    }
    throw fail(std::string("unexpected character '") + text[pos] + "'");
  }
  std::vector<std::int64_t> coeffs(terms.empty() ? 0 : terms.rbegin()->first + 1, 0);
  for (auto [power, c] : terms) coeffs[power] = c;
  return Poly(field, std::move(coeffs));
}

DivMod poly_divmod(const Poly& a, const Poly& b) {
  require_same_field(a, b, "poly_divmod");
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const FieldSpec& f = a.field();
  if (a.is_zero() || *a.degree() < *b.degree()) return {Poly(f), a};

  const std::size_t db = *b.degree();
  const Residue lead_inv = f.inv(b.leading());
  std::vector<Residue> rem = a.coefficients();
  std::vector<std::int64_t> quot(rem.size() - db, 0);
  const auto& bc = b.coefficients();
  for (std::size_t i = rem.size(); i-- > db;) {
    const Residue c = f.mul(rem[i], lead_inv);
    quot[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j)
      rem[i - db + j] = f.sub(rem[i - db + j], f.mul(c, bc[j]));
  }
  rem.resize(db);
  return {Poly(f, std::move(quot)), Poly(f, std::vector<std::int64_t>(rem.begin(), rem.end()))};
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  require_same_field(a, b, "poly_gcd");
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = poly_divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly poly_pow(const Poly& base, std::size_t exponent) {
  Poly result = Poly::constant(base.field(), 1);
  Poly square = base;
  while (exponent) {
    if (exponent & 1) result = result * square;
    exponent >>= 1;
    if (exponent) square = square * square;
  }
  return result;
}

Poly poly_shift_one(const Poly& f) {
  const FieldSpec& field = f.field();
  const auto& a = f.coefficients();
  const std::size_t n = a.size();
  // sum_i a_i (x+1)^i = sum_k x^k sum_{i>=k} a_i C(i, k)
  std::vector<std::int64_t> out(n, 0);
  std::vector<Residue> binom_row{1};
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      std::vector<Residue> next(i + 1, 1);
      for (std::size_t k = 1; k < i; ++k) next[k] = field.add(binom_row[k - 1], binom_row[k]);
      binom_row = std::move(next);
    }
    if (a[i] == 0) continue;
    for (std::size_t k = 0; k <= i; ++k)
      out[k] = field.add(static_cast<Residue>(out[k]), field.mul(a[i], binom_row[k]));
  }
  return Poly(field, std::move(out));
}

const std::vector<Poly>& monic_irreducibles(FieldSpec field, std::size_t degree) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, std::size_t>, std::vector<Poly>> cache;

  if (degree == 0) throw std::invalid_argument("monic_irreducibles: degree must be positive");
  if (candidate_count(field.modulus(), degree, kSearchLimit) > kSearchLimit)
    throw std::length_error("monic_irreducibles: search space too large");

  // Lower degrees first, outside the lock for this degree.
  std::vector<const std::vector<Poly>*> lower;
  for (std::size_t d = 1; 2 * d <= degree; ++d) lower.push_back(&monic_irreducibles(field, d));

  std::lock_guard lock(mutex);
  const auto key = std::make_pair(field.modulus(), degree);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::vector<Poly> found;
  MonicCounter counter(field, degree);
  do {
    Poly candidate = counter.current();
    const bool reducible = std::any_of(lower.begin(), lower.end(), [&](const auto* list) {
      return std::any_of(list->begin(), list->end(),
                         [&](const Poly& q) { return divides(q, candidate); });
    });
    if (!reducible) found.push_back(std::move(candidate));
  } while (counter.advance());
  std::sort(found.begin(), found.end());
  return cache.emplace(key, std::move(found)).first->second;
}

Factorization poly_factor(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("poly_factor: zero polynomial");
  if (*f.degree() > kFactorDegreeCap)
    throw std::length_error("poly_factor: degree " + std::to_string(*f.degree()) +
                            " exceeds cap " + std::to_string(kFactorDegreeCap));
  const FieldSpec& field = f.field();
  Factorization out;
  out.unit = f.leading();
  Poly rest = f.monic();

  // Once every factor of degree < d is gone, any monic degree-d divisor is irreducible.
  for (std::size_t d = 1; 2 * d <= rest.degree_or_zero(); ++d) {
    if (candidate_count(field.modulus(), d, kSieveLimit) <= kSieveLimit) {
      for (const Poly& q : monic_irreducibles(field, d)) {
        if (2 * d > rest.degree_or_zero()) break;
        if (auto e = strip(rest, q)) out.factors.emplace_back(q, e);
      }
      continue;
    }
    if (candidate_count(field.modulus(), d, kSearchLimit) > kSearchLimit)
      throw std::length_error("poly_factor: trial-division search space too large");
    MonicCounter counter(field, d);
    do {
      if (2 * d > rest.degree_or_zero()) break;
      Poly q = counter.current();
      if (auto e = strip(rest, q)) out.factors.emplace_back(std::move(q), e);
    } while (counter.advance());
  }
  if (!rest.is_constant()) out.factors.emplace_back(std::move(rest), 1);
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

Poly expand(const Factorization& fac, FieldSpec field) {
  Poly out = Poly::constant(field, fac.unit);
  for (const auto& [q, e] : fac.factors) out = out * poly_pow(q, e);
  return out;
}

std::string to_string(const Factorization& fac) {
  std::string out;
  if (fac.unit != 1 || fac.factors.empty()) out = std::to_string(fac.unit);
  for (const auto& [q, e] : fac.factors) {
    if (!out.empty()) out += " * ";
    const bool bare = q == Poly::x(q.field());
    out += bare ? q.to_string() : "(" + q.to_string() + ")";
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

} // namespace lights
