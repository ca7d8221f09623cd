#include <doctest.h>

#include "lights/formulas.hpp"
#include "lights/game.hpp"
#include "lights/snf.hpp"
#include "oracles.hpp"

using namespace lights;

namespace {

const FieldSpec gf2{2};
const FieldSpec gf3{3};

Poly p2(const char* text) { return parse_poly(text, gf2); }

std::vector<Poly> polys(FieldSpec f, std::initializer_list<const char*> texts) {
  std::vector<Poly> out;
  for (auto t : texts) out.push_back(parse_poly(t, f));
  return out;
}

Matrix companion(const Poly& f) {
  const std::size_t n = *f.degree();
  Matrix c(n, n, f.field());
  for (std::size_t i = 1; i < n; ++i) c.set(i, i - 1, 1);
  for (std::size_t i = 0; i < n; ++i) c.set(i, n - 1, f.field().neg(f.coeff(i)));
  return c;
}

Matrix adjacency(const char* spec, FieldSpec f = gf2) { return adjacency_matrix(build_family(spec), f); }

} // namespace

TEST_CASE("char_matrix examples") {
  const PolyMatrix z = char_matrix(Matrix(2, 2, gf2));
  CHECK(z.at(0, 0) == p2("x"));
  CHECK(z.at(1, 1) == p2("x"));
  CHECK(z.at(0, 1).is_zero());

  CHECK(char_matrix(Matrix::identity(1, gf2)).at(0, 0) == p2("x + 1"));

  const PolyMatrix p = char_matrix(adjacency("path:2"));
  CHECK(p.at(0, 0) == p2("x"));
  CHECK(p.at(0, 1) == p2("1"));
  CHECK(p.at(1, 0) == p2("1"));

  const PolyMatrix q = char_matrix(Matrix::from_rows(gf3, {{1, 2}, {0, 0}}));
  CHECK(q.at(0, 0) == parse_poly("x + 2", gf3));
  CHECK(q.at(0, 1) == parse_poly("1", gf3));

  CHECK_THROWS_AS(char_matrix(Matrix(2, 3, gf2)), std::invalid_argument);
}

TEST_CASE("smith_normal_form examples") {
  const Poly f = p2("x^3 + x + 1");
  CHECK(smith_normal_form(char_matrix(companion(f))).invariant_factors == polys(gf2, {"1", "1", "x^3 + x + 1"}));
  CHECK(smith_normal_form(char_matrix(Matrix(2, 2, gf2))).invariant_factors == polys(gf2, {"x", "x"}));

  const SnfResult petersen = smith_normal_form(char_matrix(adjacency("petersen")));
  CHECK(petersen.invariant_factors ==
        polys(gf2, {"1", "1", "1", "1", "1", "x + 1", "x^2 + x", "x^2 + x", "x^2 + x", "x^3 + x"}));
}

TEST_CASE("smith_normal_form errors") {
  PolyMatrix singular(2, 2, gf2);
  singular.at(0, 0) = p2("x");
  singular.at(0, 1) = p2("x");
  singular.at(1, 0) = p2("x + 1");
  singular.at(1, 1) = p2("x + 1");
  CHECK_THROWS_AS(smith_normal_form(singular), std::domain_error);
  CHECK_THROWS_AS(smith_normal_form(PolyMatrix(2, 3, gf2)), std::invalid_argument);
  CHECK(smith_normal_form(PolyMatrix(0, 0, gf2)).invariant_factors.empty());
}

TEST_CASE("invariant_factors examples") {
  CHECK(invariant_factors(adjacency("star:5")).invariant_factors == polys(gf2, {"1", "1", "x", "x", "x^3"}));
  CHECK(invariant_factors(adjacency("path:2")).invariant_factors == polys(gf2, {"1", "x^2 + 1"}));
  CHECK(invariant_factors(Matrix::identity(2, gf2)).invariant_factors == polys(gf2, {"x + 1", "x + 1"}));
  CHECK(invariant_factors(adjacency("star:5")).to_string() == "1, 1, x, x, x^3");
}

TEST_CASE("charpoly_from_snf examples") {
  CHECK(charpoly_from_snf({gf2, polys(gf2, {"1", "x^2 + 1"})}) == p2("x^2 + 1"));
  CHECK(charpoly_from_snf({gf2, polys(gf2, {"x", "x"})}) == p2("x^2"));
  CHECK(charpoly_from_snf(invariant_factors(adjacency("petersen"))) ==
        poly_pow(p2("x + 1"), 6) * poly_pow(p2("x"), 4));
}

TEST_CASE("charpoly_oracle examples") {
  CHECK(charpoly_oracle({{0, 1}, {1, 0}}, gf2) == p2("x^2 + 1"));
  CHECK(charpoly_oracle({{0, 1}, {1, 0}}, FieldSpec(7)) == parse_poly("x^2 - 1", FieldSpec(7)));
  const IntMatrix p3{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
  CHECK(charpoly_oracle(p3, gf2) == p2("x^3"));
  CHECK(charpoly_oracle(p3, FieldSpec(7)) == parse_poly("x^3 - 2*x", FieldSpec(7)));
  CHECK(charpoly_oracle(to_integer(adjacency("petersen")), gf2) == poly_pow(p2("x + 1"), 6) * poly_pow(p2("x"), 4));
  // eigenvalues 3, 1 (x5), -2 (x4) over a prime that keeps them distinct
  const FieldSpec gf101(101);
  const Poly expected = parse_poly("x - 3", gf101) * poly_pow(parse_poly("x - 1", gf101), 5) *
                        poly_pow(parse_poly("x + 2", gf101), 4);
  CHECK(charpoly_oracle(to_integer(adjacency("petersen")), gf101) == expected);
  CHECK(charpoly_oracle({}, gf2) == p2("1"));
  CHECK_THROWS_AS(charpoly_oracle({{0, 1}}, gf2), std::invalid_argument);
}

TEST_CASE("factor_data examples") {
  const FactorData star = factor_data({gf2, polys(gf2, {"1", "1", "x", "x", "x^3"})});
  REQUIRE(star.exponents.size() == 1);
  CHECK(star.exponents.at(p2("x")) == std::vector<std::size_t>{1, 1, 3});

  const FactorData path = factor_data({gf2, polys(gf2, {"1", "x^2 + 1"})});
  REQUIRE(path.exponents.size() == 1);
  CHECK(path.exponents.at(p2("x + 1")) == std::vector<std::size_t>{2});

  CHECK(factor_data({gf2, polys(gf2, {"1"})}).exponents.empty());

  const FactorData petersen = factor_data(invariant_factors(adjacency("petersen")));
  CHECK(petersen.exponents.at(p2("x")) == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(petersen.exponents.at(p2("x + 1")) == std::vector<std::size_t>{1, 1, 1, 1, 2});

  CHECK_THROWS_AS(factor_data({gf2, {Poly::monomial(gf2, 25)}}), std::length_error);
}

TEST_CASE("property: Smith form invariants on random matrices") {
  SweepRng rng(31);
  for (FieldSpec f : {gf2, gf3, FieldSpec(5)}) {
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t n = rng.uniform(1, 8);
      const Matrix a = rng.random_symmetric01(n, f);
      const SnfResult s = invariant_factors(a);
      REQUIRE(s.invariant_factors.size() == n);
      std::size_t total_degree = 0;
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(s.invariant_factors[i].is_monic());
        total_degree += s.invariant_factors[i].degree_or_zero();
        if (i + 1 < n)
          CHECK(poly_divmod(s.invariant_factors[i + 1], s.invariant_factors[i]).remainder.is_zero());
      }
      CHECK(total_degree == n);
      CHECK(charpoly_from_snf(s) == charpoly_oracle(to_integer(a), f));

      std::size_t divisible_by_x = 0;
      for (const auto& inv : s.invariant_factors) divisible_by_x += inv.coeff(0) == 0;
      CHECK(divisible_by_x == rank_nullity(a).nullity);

      const FactorData fd = factor_data(s);
      Poly product = Poly::constant(f, 1);
      for (const auto& [q, exps] : fd.exponents) {
        CHECK(std::is_sorted(exps.begin(), exps.end()));
        for (auto e : exps) product = product * poly_pow(q, e);
      }
      CHECK(product == charpoly_from_snf(s));
    }
  }
}

TEST_CASE("property: leading products equal determinantal divisors") {
  SweepRng rng(32);
  for (FieldSpec f : {gf2, gf3}) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = rng.uniform(1, 4);
      const Matrix a = trial % 2 ? rng.random01(n, f) : rng.random_symmetric01(n, f);
      const PolyMatrix cm = char_matrix(a);
      const SnfResult s = smith_normal_form(cm);
      Poly leading = Poly::constant(f, 1);
      for (std::size_t k = 1; k <= n; ++k) {
        leading = leading * s.invariant_factors[k - 1];
        Poly divisor(f);
        oracle::for_each_subset(n, k, [&](const std::vector<std::size_t>& rows) {
          oracle::for_each_subset(n, k, [&](const std::vector<std::size_t>& cols) {
            std::vector<std::vector<Poly>> minor;
            for (auto r : rows) {
              auto& line = minor.emplace_back();
              for (auto c : cols) line.push_back(cm.at(r, c));
            }
            divisor = poly_gcd(divisor, oracle::poly_det(minor, f));
          });
        });
        CHECK(leading == divisor);
      }
    }
  }
}

TEST_CASE("non-derogatory inputs have one nontrivial invariant factor") {
  SweepRng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const FieldSpec f = trial % 2 ? gf3 : gf2;
    std::vector<std::int64_t> coeffs(rng.uniform(1, 7));
    for (auto& c : coeffs) c = static_cast<std::int64_t>(rng.uniform(0, f.modulus() - 1));
    coeffs.push_back(1);
    const Poly poly(f, coeffs);
    const SnfResult s = invariant_factors(companion(poly));
    CHECK(s.nontrivial() == std::vector<Poly>{poly});
  }
  for (std::size_t m = 1; m <= 12; ++m) {
    const SnfResult s = invariant_factors(adjacency(("path:" + std::to_string(m)).c_str()));
    CHECK(s.nontrivial().size() == 1);
  }
}

TEST_CASE("closed switching shifts invariant factors in characteristic 2") {
  SweepRng rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.uniform(1, 8);
    const Matrix a = rng.random_graph_adjacency(n, gf2);
    const SnfResult open = invariant_factors(a);
    const SnfResult closed = invariant_factors(a + Matrix::identity(n, gf2));
    std::vector<Poly> shifted;
    for (const auto& s : open.invariant_factors) shifted.push_back(poly_shift_one(s));
    CHECK(closed.invariant_factors == shifted);
  }
}

TEST_CASE("charpoly oracle reports overflow instead of wrapping") {
  const std::size_t n = 40;
  IntMatrix big(n, std::vector<std::int64_t>(n, 1'000'000));
  CHECK_THROWS_AS(charpoly_oracle(big, gf2), std::overflow_error);
}
