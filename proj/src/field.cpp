#include "lights/field.hpp"

#include <stdexcept>

namespace lights {

bool is_prime(std::uint32_t n) noexcept {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec::FieldSpec(std::uint32_t p) : p_(p) {
  if (p >= kMaxModulus || !is_prime(p))
    throw std::invalid_argument("field modulus must be a prime below 65536, got " +
                                std::to_string(p));
}

Residue FieldSpec::inv(Residue a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in " + name());
  // extended Euclid on (a, p)
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a % p_;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  return reduce(t);
}

} // namespace lights
