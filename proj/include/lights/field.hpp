#pragma once

#include <cstdint>
#include <string>

namespace lights {

using Residue = std::uint32_t;

/// A prime field GF(p) with p < 2^16.
class FieldSpec {
public:
  static constexpr std::uint32_t kMaxModulus = 1u << 16;

  /// Throws std::invalid_argument unless `p` is a prime below 2^16.
  explicit FieldSpec(std::uint32_t p = 2);

  std::uint32_t modulus() const noexcept { return p_; }
  bool is_binary() const noexcept { return p_ == 2; }

  Residue reduce(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept { return (a * b) % p_; }
  /// Multiplicative inverse; `a` must be nonzero.
  Residue inv(Residue a) const;

  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n) noexcept;

} // namespace lights
