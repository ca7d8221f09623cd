#include "lights/formulas.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lights {

std::string to_string(SwitchMode mode) { return mode == SwitchMode::open ? "open" : "closed"; }

SwitchMode parse_mode(std::string_view text) {
  if (text == "open") return SwitchMode::open;
  if (text == "closed") return SwitchMode::closed;
  throw std::invalid_argument("mode must be 'open' or 'closed', got '" + std::string(text) + "'");
}

Partition::Partition(std::vector<std::size_t> p) : parts(std::move(p)) {
  if (std::find(parts.begin(), parts.end(), 0u) != parts.end())
    throw std::invalid_argument("partition parts must be positive");
}

std::size_t Partition::total() const {
  return std::accumulate(parts.begin(), parts.end(), std::size_t{0});
}

std::size_t partition_min_sum(const Partition& pi, const Partition& tau) {
  std::size_t sum = 0;
  for (auto a : pi.parts)
    for (auto b : tau.parts) sum += std::min(a, b);
  return sum;
}

std::size_t nullity_from_factor_data(const FactorData& fa, const FactorData& fb) {
  std::size_t total = 0;
  for (const auto& [q, ea] : fa.exponents) {
    const auto it = fb.exponents.find(q);
    if (it == fb.exponents.end()) continue;
    std::size_t blocks = 0;
    for (auto e : ea)
      for (auto f : it->second) blocks += std::min(e, f);
    total += q.degree_or_zero() * blocks;
  }
  return total;
}

std::size_t nullity_snf_product(const SnfResult& sa, const SnfResult& sb) {
  if (!(sa.field == sb.field)) throw std::invalid_argument("nullity_snf_product: field mismatch");
  std::size_t total = 0;
  for (const auto& s : sa.invariant_factors) {
    if (s.is_constant()) continue;
    for (const auto& t : sb.invariant_factors) {
      if (t.is_constant()) continue;
      total += poly_gcd(s, t).degree_or_zero();
    }
  }
  return total;
}

std::size_t nullity_snf_self(const SnfResult& sa) {
  const std::size_t m = sa.invariant_factors.size();
  std::size_t total = 0;
  for (std::size_t i = 1; i <= m; ++i)
    total += (2 * m - 2 * i + 1) * sa.invariant_factors[i - 1].degree_or_zero();
  return total;
}

std::size_t nullity_path_product(std::size_t path_length, const SnfResult& sg) {
  if (path_length == 0) throw std::invalid_argument("nullity_path_product: path length must be >= 1");
  IntMatrix path(path_length, std::vector<std::int64_t>(path_length, 0));
  for (std::size_t i = 0; i + 1 < path_length; ++i) path[i][i + 1] = path[i + 1][i] = 1;
  const Poly c_path = charpoly_oracle(path, sg.field);
  std::size_t total = 0;
  for (const auto& s : sg.invariant_factors) total += poly_gcd(c_path, s).degree_or_zero();
  return total;
}

std::size_t gcd_lower_bound(const Poly& ca, const Poly& cb, SwitchMode mode) {
  const Poly lhs = mode == SwitchMode::open ? ca : poly_shift_one(ca);
  return poly_gcd(lhs, cb).degree_or_zero();
}

std::size_t oracle_nullity(const Matrix& a, const Matrix& b, std::size_t cap) {
  if (!a.is_square() || !b.is_square())
    throw std::invalid_argument("oracle_nullity: A and B must be square");
  const std::size_t size = a.rows() * b.rows();
  if (size > cap)
    throw std::length_error("oracle_nullity: operator size " + std::to_string(size) +
                            " exceeds cap " + std::to_string(cap));
  return rank_nullity(sylvester_operator(a, b)).nullity;
}

std::string to_string(NullityMethod method) {
  switch (method) {
  case NullityMethod::theorem_sum: return "theorem_sum";
  case NullityMethod::snf_product: return "snf_product";
  case NullityMethod::snf_self: return "snf_self";
  case NullityMethod::snf_path: return "snf_path";
  case NullityMethod::oracle: return "oracle";
  case NullityMethod::lower_bound_open: return "lower_bound_open";
  case NullityMethod::lower_bound_closed: return "lower_bound_closed";
  }
  return "unknown";
}

std::size_t SweepRng::uniform(std::size_t lo, std::size_t hi) {
  if (hi < lo) throw std::invalid_argument("SweepRng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // rejection sampling keeps the draw unbiased
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do v = engine_();
  while (v >= limit);
  return lo + static_cast<std::size_t>(v % span);
}

Matrix SweepRng::random_graph_adjacency(std::size_t n, FieldSpec field) {
  Matrix a(n, n, field);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin()) {
        a.set(i, j, 1);
        a.set(j, i, 1);
      }
  return a;
}

Matrix SweepRng::random_symmetric01(std::size_t n, FieldSpec field) {
  Matrix a(n, n, field);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (coin()) {
        a.set(i, j, 1);
        a.set(j, i, 1);
      }
  return a;
}

Matrix SweepRng::random01(std::size_t n, FieldSpec field) {
  Matrix a(n, n, field);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (coin()) a.set(i, j, 1);
  return a;
}

Partition SweepRng::random_partition(std::size_t max_total) {
  const std::size_t total = uniform(1, max_total);
  // random composition: cut [0, total) at a random subset of the interior points
  std::vector<std::size_t> parts;
  std::size_t run = 1;
  for (std::size_t i = 1; i < total; ++i) {
    if (coin()) {
      parts.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  parts.push_back(run);
  return Partition(std::move(parts));
}

} // namespace lights
