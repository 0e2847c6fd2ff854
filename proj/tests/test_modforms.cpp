#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "pdot/modforms.hpp"

using namespace pdot;
using namespace pdot::modforms;
using series::Domain;
using series::TruncSeries;

TEST_CASE("eta text format round trip") {
  const auto eq = parse_eta("12;1;1:-2,2:1,3:2,6:-1,12:2");
  CHECK(eq.level == 12);
  CHECK(eq.exponents.at(1) == -2);
  CHECK(eq.exponents.at(12) == 2);
  CHECK(format_eta(eq) == "12;1;1:-2,2:1,3:2,6:-1,12:2");
  CHECK(parse_eta(format_eta(eq)) == eq);
  CHECK(format_eta(parse_eta("6;-4;1:0,2:3")) == "6;-4;2:3");
  CHECK(parse_eta("4;3;").exponents.empty());
  CHECK_THROWS(parse_eta("12;1;5:1"));
  CHECK_THROWS(parse_eta("12;1;1:1,1:2"));
  CHECK_THROWS(parse_eta("12;1"));
  CHECK_THROWS(parse_eta("x;1;1:1"));
}

TEST_CASE("weight") {
  CHECK(weight(a_k1(2)) == 82);
  CHECK_THROWS_AS(weight(parse_eta("1;1;1:1")), std::domain_error);
}

TEST_CASE("kronecker symbol against its definition") {
  for (std::int64_t a = -40; a <= 40; ++a)
    for (std::int64_t n = -60; n <= 60; ++n) REQUIRE(kronecker_symbol(a, n) == oracle::kronecker_by_definition(a, n));
  CHECK(kronecker_symbol(-3, 5) == -1);
  CHECK(kronecker_symbol(-3, 11) == -1);
  CHECK(kronecker_symbol(-3, 7) == 1);
}

TEST_CASE("A(2,1) structure") {
  const auto a = a_k1(2);
  CHECK(a.level == 18);
  CHECK(a.scalar == 36);
  CHECK(a.exponents.at(1) == 230);
  CHECK(a.exponents.at(2) == 8);
  CHECK(a.exponents.at(3) == -74);
  const auto v = modularity_check(a);
  CHECK(v.weight == 82);
  CHECK(v.conditions_hold());
  CHECK(v.holomorphic);
  CHECK(cusp_order(a, 18) == 1);
}

TEST_CASE("A/B families are holomorphic modular forms of the expected weight") {
  for (int k = 0; k <= 3; ++k) {
    const std::int64_t wt = [&] {
      std::int64_t p = 1;
      for (int i = 0; i < k + 2; ++i) p *= 3;
      return p + 1;
    }();
    for (const auto& eq : {a_k1(k), b_k1(k), a_k2(k + 1), b_k2(k + 1)}) {
      const auto v = modularity_check(eq);
      CHECK(v.conditions_hold());
      CHECK(v.holomorphic);
      CHECK(v.weight == wt);
      for (const auto& c : v.cusp_orders) CHECK(c.order >= 0);
      for (std::int64_t d = 1; d < 4 * eq.level; ++d)
        if (gcd(d, eq.level) == 1) CHECK(character_value(eq, d) == 1);
    }
  }
  CHECK(beta_k(0) == 1);
  CHECK(beta_k(1) == 0);
  CHECK(beta_k(2) == 5);
}

TEST_CASE("cusp order at infinity equals the expansion valuation") {
  for (const auto& text : {"18;1;1:230,2:8,3:-74", "12;1;1:-2,2:1,3:2,6:-1,12:2", "36;1;1:21,2:3,3:-7,6:3",
                           "6;1;1:2,2:2,3:2,6:2"}) {
    const auto eq = parse_eta(text);
    const auto ord = cusp_order(eq, eq.level);
    const auto s = q_expansion(eq, 40);
    CHECK(Rational(static_cast<long long>(s.valuation())) == ord);
  }
}

TEST_CASE("q_expansion") {
  // eta(6z)^4 = q f6^4
  const auto s = q_expansion(parse_eta("6;1;6:4"), 30);
  const auto naive = oracle::naive_product({{6, 4}}, 29);
  CHECK(s.coeff(0) == 0);
  for (std::size_t n = 1; n < 30; ++n) CHECK(s.coeff(n) == naive[n - 1]);
  CHECK_THROWS(q_expansion(parse_eta("1;1;1:1"), 10));
  CHECK_THROWS(q_expansion(parse_eta("2;1;1:-24,2:0"), 10));
  CHECK(q_expansion(parse_eta("6;5;6:4"), 10, Domain::residue(3)).coeff(1) == 2);
}

TEST_CASE("sturm bounds") {
  CHECK(sturm_bound(82, 18, true) == 246);
  CHECK(sturm_bound(82, 36, true) == 492);
  CHECK(sturm_bound(12, 1, true) == 1);
  CHECK(sturm_bound(2, 4, false) > sturm_bound(2, 4, true));
}

TEST_CASE("character of a non-trivial quotient") {
  // eta(z) eta(23z) has character (-23/.)
  const auto eq = parse_eta("23;1;1:1,23:1");
  CHECK(weight(eq) == 1);
  for (std::int64_t d = 1; d < 60; ++d)
    if (gcd(d, 23) == 1) CHECK(character_value(eq, d) == kronecker_symbol(-23, d));
}

TEST_CASE("U operator") {
  const auto a = TruncSeries::from_coeffs({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(u_operator(a, 3) == TruncSeries::from_coeffs({0, 3, 6, 9}));
  CHECK(u_operator_power(a, 2, 2) == TruncSeries::from_coeffs({0, 4, 8}));
  CHECK(u_operator_power(a, 3, 0) == a);
}

TEST_CASE("property: U(d) composition and linearity") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> coef(-50, 50);
  std::uniform_int_distribution<std::int64_t> ddist(1, 6);
  std::uniform_int_distribution<std::size_t> len(1, 120);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t T = len(rng);
    TruncSeries a(T, Domain::exact()), b(T, Domain::exact());
    for (std::size_t n = 0; n < T; ++n) {
      a.set_coeff(n, coef(rng));
      b.set_coeff(n, coef(rng));
    }
    const auto d = ddist(rng), e = ddist(rng);
    REQUIRE(u_operator(u_operator(a, d), e) == u_operator(a, d * e));
    REQUIRE(u_operator(ring_add(a, b), d) == ring_add(u_operator(a, d), u_operator(b, d)));
    const BigInt c = coef(rng);
    REQUIRE(u_operator(series::scale(a, c), d) == series::scale(u_operator(a, d), c));
  }
}

TEST_CASE("congruent_upto") {
  const auto a = TruncSeries::from_coeffs({1, 2, 3, 4});
  const auto b = TruncSeries::from_coeffs({1, 11, 3, 5});
  const auto r = congruent_upto(a, b, 9, 2);
  CHECK(r.holds);
  const auto r2 = congruent_upto(a, b, 9, 3);
  CHECK_FALSE(r2.holds);
  CHECK(r2.first_failure == 3);
  CHECK_THROWS(congruent_upto(a, b, 9, 4));
  CHECK_THROWS(congruent_upto(series::reduce_mod(a, 8), series::reduce_mod(b, 8), 3, 1));
}
