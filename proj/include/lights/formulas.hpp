#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lights/matrix.hpp"
#include "lights/poly.hpp"
#include "lights/snf.hpp"

namespace lights {

enum class SwitchMode { open, closed };

std::string to_string(SwitchMode mode);
/// Accepts "open" or "closed"; throws std::invalid_argument otherwise.
SwitchMode parse_mode(std::string_view text);

struct Partition {
  std::vector<std::size_t> parts;

  /// Throws std::invalid_argument if any part is zero.
  explicit Partition(std::vector<std::size_t> parts);
  std::size_t total() const;
};

/// sum_i sum_j min(pi_i, tau_j); never below min(total(pi), total(tau)).
std::size_t partition_min_sum(const Partition& pi, const Partition& tau);

/// Nullity of the Sylvester operator from irreducible-factor data: for every
/// irreducible q common to both sides, deg(q) * sum_ij min(e_i, f_j).
std::size_t nullity_from_factor_data(const FactorData& fa, const FactorData& fb);

/// sum_i sum_j deg gcd(s_i, t_j).
std::size_t nullity_snf_product(const SnfResult& sa, const SnfResult& sb);

/// sum_i (2m - 2i + 1) deg s_i, i counted from 1; the self-product case.
std::size_t nullity_snf_self(const SnfResult& sa);

/// sum_i deg gcd(c_{P_m}, s_i): nullity of the adjacency matrix of P_m x G
/// when `sg` holds the invariant factors of A_G.
std::size_t nullity_path_product(std::size_t path_length, const SnfResult& sg);

/// deg gcd(c_A, c_B) (open) or deg gcd(c_A(x+1), c_B) (closed).
std::size_t gcd_lower_bound(const Poly& ca, const Poly& cb, SwitchMode mode);

inline constexpr std::size_t kDefaultOracleCap = 4096;

/// Nullity of sylvester_operator(A, B) by elimination. Throws std::length_error
/// when m*n exceeds `cap`.
std::size_t oracle_nullity(const Matrix& a, const Matrix& b, std::size_t cap = kDefaultOracleCap);

enum class NullityMethod {
  theorem_sum,
  snf_product,
  snf_self,
  snf_path,
  oracle,
  lower_bound_open,
  lower_bound_closed,
};

std::string to_string(NullityMethod method);

struct NullityReport {
  NullityMethod method;
  std::size_t value = 0;
  std::string inputs;
  std::optional<std::uint64_t> seed;
};

/// Deterministic random source for the property sweeps. Bits are taken
/// directly from mt19937_64 so sequences do not depend on the standard
/// library's distribution implementations.
class SweepRng {
public:
  explicit SweepRng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  bool coin() { return (engine_() >> 63) != 0; }
  /// Uniform in [lo, hi].
  std::size_t uniform(std::size_t lo, std::size_t hi);

  /// Erdos-Renyi G(n, 1/2) adjacency matrix.
  Matrix random_graph_adjacency(std::size_t n, FieldSpec field);
  /// Symmetric matrix with independent 0/1 entries on and above the diagonal.
  Matrix random_symmetric01(std::size_t n, FieldSpec field);
  /// Arbitrary 0/1 matrix.
  Matrix random01(std::size_t n, FieldSpec field);
  Partition random_partition(std::size_t max_total);

private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

} // namespace lights
