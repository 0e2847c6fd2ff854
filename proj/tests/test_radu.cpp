#include "doctest.h"

#include <algorithm>

#include "pdot/partitions.hpp"
#include "pdot/radu.hpp"
#include "pdot/verify.hpp"

using namespace pdot;
using namespace pdot::radu;

namespace {

RaduInstance table_instance(std::int64_t m, std::int64_t t) { return {m, 12, 12, {-2, 1, 2, 0, -1, 2}, t}; }

AuxExponents table_aux(std::int64_t r1) { return {{r1, 0, 0, 0, 0, 0}}; }

// p_{m,r}(gamma_delta) straight from its definition, minimised over twice the
// usual lambda range.
Rational p_mr_oracle(const RaduInstance& inst, std::int64_t delta) {
  const auto ds = divisors(inst.M);
  const std::int64_t k = std::gcd(inst.m * inst.m - 1, std::int64_t{24});
  std::optional<Rational> best;
  for (std::int64_t lambda = 0; lambda < 2 * inst.m; ++lambda) {
    Rational total = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const std::int64_t g = std::gcd(ds[i] * 1 + ds[i] * k * lambda * delta, inst.m * delta);
      total += Rational(inst.r[i] * g * g) / (ds[i] * inst.m);
    }
    total /= 24;
    if (!best || total < *best) best = total;
  }
  return *best;
}

}  // namespace

TEST_CASE("instance invariants for the table exponents") {
  const auto inst = table_instance(6, 2);
  CHECK(inst.k() == 1);
  CHECK(inst.s_pow2() == 6);
  CHECK(inst.j_odd() == 243);
  CHECK(inst.sum_r() == 2);
  CHECK(inst.sum_delta_r() == 24);
  CHECK(gamma0_index(12) == 24);
  CHECK(gamma0_index(18) == 36);
  CHECK(gamma0_index(1) == 1);
  CHECK_THROWS(RaduInstance{6, 12, 12, {1, 2}, 2}.validate());
  CHECK_THROWS(RaduInstance{6, 12, 12, {-2, 1, 2, 0, -1, 2}, 6}.validate());
}

TEST_CASE("squares of units") {
  CHECK(squares_mod(24) == std::vector<std::int64_t>{1});
  CHECK(squares_mod(144) == std::vector<std::int64_t>{1, 25, 49, 73, 97, 121});
}

TEST_CASE("P(t) is a singleton for every table row") {
  for (const auto& row : verify::table1_rows()) CHECK(p_set(table_instance(row.m, row.t)) == std::vector{row.t});
}

TEST_CASE("p_mr matches a wider scan") {
  for (const auto& row : verify::table1_rows()) {
    const auto inst = table_instance(row.m, row.t);
    for (const auto delta : divisors(12)) {
      const auto w = p_mr(inst, delta);
      CHECK(w.value == p_mr_oracle(inst, delta));
      CHECK(w.value == p_mr_scan(inst, delta, 3 * row.m).value);
      CHECK(w.lambda >= 0);
      CHECK(w.lambda < row.m);
    }
  }
}

TEST_CASE("p_star") {
  CHECK(p_star(table_aux(5), 12, 1) == Rational(5, 24));
  CHECK(p_star(table_aux(5), 12, 6) == Rational(5, 24));
  CHECK(p_star(AuxExponents{{0, 0, 0, 0, 0, 24}}, 12, 4) == Rational(16, 12));
}

TEST_CASE("nu bounds for the table") {
  CHECK(nu_bound(table_instance(6, 2), table_aux(5)).nu == Rational(151, 24));
  CHECK(nu_bound(table_instance(6, 5), table_aux(5)).nu == Rational(139, 24));
  CHECK(nu_bound(table_instance(192, 191), table_aux(160)).floor == 154);
  CHECK(nu_bound(table_instance(192, 47), table_aux(160)).floor == 155);
  CHECK(nu_bound(table_instance(12, 8), table_aux(10)).floor == 10);
  CHECK(nu_bound(table_instance(48, 11), table_aux(40)).floor == 40);
  CHECK(nu_bound(table_instance(48, 23), table_aux(40)).floor == 39);
}

TEST_CASE("c_r series is PDO_t shifted by one") {
  const auto c = c_r_series(table_instance(6, 2), 60, 256);
  const auto p = partitions::pdo_t_series(61);
  for (std::size_t n = 0; n < 60; ++n) CHECK(c.coeff(n) == p.coeff(n + 1) % 256);
}

TEST_CASE("certificates") {
  const auto cert = radu_verify(table_instance(6, 2), table_aux(5), 4);
  CHECK(cert.verdict);
  CHECK(cert.delta_star.member());
  CHECK(cert.delta_star.failed().empty());
  CHECK(cert.p_set == std::vector<std::int64_t>{2});
  CHECK(cert.nu.floor == 6);
  CHECK(cert.nonneg_checks.size() == 6);
  for (const auto& c : cert.nonneg_checks) CHECK(c.sum() >= 0);
  CHECK(cert.verified_range.size() == 7);
  CHECK_FALSE(cert.first_failure.has_value());
  CHECK(certificate_from_json(to_json(cert)) == cert);
  CHECK(certificate_from_json(nlohmann::json::parse(to_json(cert).dump())) == cert);
}

TEST_CASE("a modulus beyond the true one is refuted") {
  const auto cert = radu_verify(table_instance(6, 2), table_aux(5), 8);
  CHECK_FALSE(cert.verdict);
  REQUIRE(cert.first_failure.has_value());
  CHECK(cert.first_failure->t_prime == 2);
  CHECK(cert.first_failure->residue % 4 == 0);
  CHECK(certificate_from_json(to_json(cert)) == cert);
}

TEST_CASE("inapplicable instances") {
  auto kind_of = [](const RaduInstance& inst, const AuxExponents& aux) {
    try {
      radu_verify(inst, aux, 4);
    } catch (const RaduInapplicable& e) {
      return std::optional(e.kind());
    }
    return std::optional<RaduInapplicable::Kind>();
  };
  CHECK(kind_of(RaduInstance{6, 36, 36, std::vector<std::int64_t>(9, 0), 0}, AuxExponents{std::vector<std::int64_t>(9, 0)}) ==
        RaduInapplicable::Kind::level_not_squarefree);
  CHECK(kind_of(table_instance(5, 2), table_aux(5)) == RaduInapplicable::Kind::not_in_delta_star);
  CHECK(kind_of(table_instance(6, 2), table_aux(0)) == RaduInapplicable::Kind::negative_order);
  try {
    radu_verify(table_instance(5, 2), table_aux(5), 4);
  } catch (const RaduInapplicable& e) {
    CHECK_FALSE(e.partial().delta_star.member());
    const auto failed = e.partial().delta_star.failed();
    CHECK(std::find(failed.begin(), failed.end(), 1) != failed.end());
  }
}
