#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "pdot/series.hpp"

using namespace pdot;
using namespace pdot::series;

namespace {

TruncSeries random_series(std::mt19937_64& rng, std::size_t order, Domain d, int lo = -20, int hi = 20) {
  std::uniform_int_distribution<int> coef(lo, hi);
  std::uniform_int_distribution<int> sparse(0, 3);
  TruncSeries s(order, d);
  for (std::size_t n = 0; n < order; ++n)
    if (sparse(rng) != 0) s.set_coeff(n, coef(rng));
  return s;
}

Domain random_domain(std::mt19937_64& rng) {
  static const std::uint64_t moduli[] = {0, 2, 8, 27, 243, 256, 186624, 4294967311ULL, 1000000007ULL};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(moduli) - 1);
  const auto m = moduli[pick(rng)];
  return m == 0 ? Domain::exact() : Domain::residue(m);
}

TruncSeries from_poly(const oracle::Poly& p) { return TruncSeries::from_coeffs(p); }

}  // namespace

TEST_CASE("domains and construction") {
  CHECK(Domain::exact().to_string() == "ZZ");
  CHECK(Domain::residue(8).to_string() == "ZZ/8");
  CHECK_THROWS_AS(Domain::residue(1), std::invalid_argument);

  const auto s = TruncSeries::from_coeffs({-3, 5, 0, 7}, Domain::residue(4));
  CHECK(s.coeff(0) == 1);
  CHECK(s.coeff(1) == 1);
  CHECK(s.coeff(3) == 3);
  CHECK(s.valuation() == 0);
  CHECK(TruncSeries(5, Domain::exact()).valuation() == 5);
  CHECK(TruncSeries::from_coeffs({0, 0, 4, 0}).nonzero_count() == 1);
  CHECK_THROWS(s.integers());
}

TEST_CASE("mixed domains and orders") {
  const auto a = TruncSeries::from_coeffs({1, 2, 3});
  const auto b = TruncSeries::from_coeffs({1, 2, 3}, Domain::residue(5));
  CHECK_THROWS_AS(ring_add(a, b), DomainMismatch);
  const auto c = ring_mul(a, TruncSeries::from_coeffs({1, 1}));
  CHECK(c.order() == 2);
  CHECK(c == TruncSeries::from_coeffs({1, 3}));
}

TEST_CASE("euler_product matches the naive product") {
  for (std::int64_t m : {1, 2, 3, 7}) {
    CHECK(euler_product(m, 200) == from_poly(oracle::naive_product({{m, 1}}, 200)));
  }
  CHECK(euler_product(1, 0).order() == 0);
}

TEST_CASE("euler quotients match the naive product") {
  const std::vector<std::pair<std::int64_t, std::int64_t>> f = {{2, 1}, {3, 2}, {12, 2}, {1, -2}, {6, -1}};
  CHECK(euler_quotient({{2, 1}, {3, 2}, {12, 2}, {1, -2}, {6, -1}}, 150) == from_poly(oracle::naive_product(f, 150)));
  CHECK(euler_factor(1, -13, 80) == from_poly(oracle::naive_product({{1, -13}}, 80)));
  CHECK(euler_factor(2, 12, 80, Domain::residue(32)) ==
        reduce_mod(from_poly(oracle::naive_product({{2, 12}}, 80)), 32));
}

TEST_CASE("1/f1 gives the partition numbers") {
  const auto p = euler_factor(1, -1, 31);
  CHECK(p.coeff(30) == 5604);
  CHECK(p == from_poly(oracle::partition_numbers(31)));
}

TEST_CASE("f2/f1^2 starts 1, 2, 4") {
  const auto s = euler_quotient({{2, 1}, {1, -2}}, 6);
  CHECK(s == TruncSeries::from_coeffs({1, 2, 4, 8, 14, 24}));
}

TEST_CASE("jacobi_cube and cubic_theta") {
  CHECK(jacobi_cube(300) == euler_factor(1, 3, 300));
  CHECK(cubic_theta(200) == from_poly(oracle::cubic_theta_lattice(200)));
  CHECK(cubic_theta(8) == TruncSeries::from_coeffs({1, 6, 0, 6, 6, 0, 0, 12}));
}

TEST_CASE("invert and divide") {
  CHECK_THROWS_AS(invert(TruncSeries::from_coeffs({2, 1})), NonUnitError);
  CHECK_THROWS_AS(invert(TruncSeries::from_coeffs({2, 1}, Domain::residue(8))), NonUnitError);
  const auto inv = invert(TruncSeries::from_coeffs({3, 1, 4}, Domain::residue(8)));
  CHECK(ring_mul(inv, TruncSeries::from_coeffs({3, 1, 4}, Domain::residue(8))) ==
        TruncSeries::one(3, Domain::residue(8)));
  CHECK(divide(euler_product(2, 100), euler_factor(1, 2, 100)) == euler_quotient({{2, 1}, {1, -2}}, 100));
}

TEST_CASE("pow agrees with repeated multiplication") {
  const auto a = TruncSeries::from_coeffs({1, -1, 0, 2, 0, 0, 1, 0, 0, 0});
  TruncSeries acc = TruncSeries::one(10);
  for (int e = 0; e <= 9; ++e) {
    CHECK(pow(a, e) == acc);
    acc = ring_mul(acc, a);
  }
  CHECK(ring_mul(pow(a, -3), pow(a, 3)) == TruncSeries::one(10));
}

TEST_CASE("dissect, inflate, shift") {
  const auto a = TruncSeries::from_coeffs({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(dissect(a, 3, 1) == TruncSeries::from_coeffs({1, 4, 7}));
  CHECK(dissect(a, 3, 0).order() == 4);
  CHECK(dissect(a, 20, 15).order() == 0);
  CHECK_THROWS(dissect(a, 3, 3));
  CHECK(inflate(TruncSeries::from_coeffs({1, 2}), 3) == TruncSeries::from_coeffs({1, 0, 0, 2, 0, 0}));
  CHECK(inflate(a, 2, 7).order() == 7);
  CHECK(shift(a, 2).order() == 12);
  CHECK(unshift(shift(a, 2), 2) == a);
  CHECK_THROWS(unshift(a, 2));
  CHECK(truncate(a, 3) == TruncSeries::from_coeffs({0, 1, 2}));
}

TEST_CASE("modulus changes") {
  const auto a = TruncSeries::from_coeffs({-1, 300, 7});
  CHECK(reduce_mod(a, 256) == TruncSeries::from_coeffs({255, 44, 7}, Domain::residue(256)));
  CHECK(change_modulus(reduce_mod(a, 256), 8) == TruncSeries::from_coeffs({7, 4, 7}, Domain::residue(8)));
  CHECK_THROWS(change_modulus(reduce_mod(a, 256), 3));
  CHECK_THROWS(reduce_mod(reduce_mod(a, 256), 8));
}

TEST_CASE("residue arithmetic with a large modulus") {
  const std::uint64_t p = 4294967311ULL;  // > 2^32
  const auto a = TruncSeries::from_coeffs({static_cast<long long>(p - 1), static_cast<long long>(p - 2)},
                                          Domain::residue(p));
  const auto sq = ring_mul(a, a);
  CHECK(sq.coeff(0) == 1);
  CHECK(sq.coeff(1) == 4);
}

TEST_CASE("to_text") { CHECK(to_text(TruncSeries::from_coeffs({1, -2})) == "0\t1\n1\t-2\n"); }

TEST_CASE("property: ring laws") {
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<std::size_t> len(1, 24);
  for (int trial = 0; trial < 1000; ++trial) {
    const Domain d = random_domain(rng);
    const std::size_t T = len(rng);
    const auto a = random_series(rng, T, d), b = random_series(rng, T, d), c = random_series(rng, T, d);
    REQUIRE(ring_add(a, b) == ring_add(b, a));
    REQUIRE(ring_mul(a, b) == ring_mul(b, a));
    REQUIRE(ring_mul(ring_mul(a, b), c) == ring_mul(a, ring_mul(b, c)));
    REQUIRE(ring_mul(a, ring_add(b, c)) == ring_add(ring_mul(a, b), ring_mul(a, c)));
    REQUIRE(ring_add(a, ring_neg(a)) == TruncSeries(T, d));
    REQUIRE(ring_sub(a, b) == ring_add(a, ring_neg(b)));
    REQUIRE(ring_mul(a, TruncSeries::one(T, d)) == a);
  }
}

TEST_CASE("property: residue arithmetic commutes with reduction") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> len(1, 30);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t T = len(rng);
    const auto a = random_series(rng, T, Domain::exact(), -1000, 1000);
    const auto b = random_series(rng, T, Domain::exact(), -1000, 1000);
    REQUIRE(reduce_mod(ring_mul(a, b), 243) == ring_mul(reduce_mod(a, 243), reduce_mod(b, 243)));
  }
}

TEST_CASE("property: invert round trip") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> len(1, 24);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const Domain d = random_domain(rng);
    const std::size_t T = len(rng);
    auto a = random_series(rng, T, d);
    a.set_coeff(0, sign(rng) ? 1 : -1);
    REQUIRE(ring_mul(a, invert(a)) == TruncSeries::one(T, d));
    const auto b = random_series(rng, T, d);
    REQUIRE(ring_mul(divide(b, a), a) == b);
  }
}

TEST_CASE("property: dissect and inflate round trip") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::size_t> len(1, 40);
  std::uniform_int_distribution<std::int64_t> mdist(1, 7);
  for (int trial = 0; trial < 1000; ++trial) {
    const Domain d = random_domain(rng);
    const auto a = random_series(rng, len(rng), d);
    const std::int64_t m = mdist(rng);
    REQUIRE(dissect(inflate(a, m), m, 0) == a);
    // Reassemble a from its m components.
    TruncSeries sum(a.order(), d);
    for (std::int64_t t = 0; t < m; ++t) {
      const auto part = dissect(a, m, t);
      if (part.order() == 0) continue;
      const auto placed = shift(inflate(part, m), static_cast<std::size_t>(t));
      TruncSeries padded(a.order(), d);
      for (std::size_t n = 0; n < std::min(a.order(), placed.order()); ++n) padded.set_coeff(n, placed.coeff(n));
      sum = ring_add(sum, padded);
    }
    REQUIRE(sum == a);
  }
}
