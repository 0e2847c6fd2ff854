#include "doctest.h"

#include "pdot/verify.hpp"

using namespace pdot;
using namespace pdot::verify;

namespace {

bool all_pass(const Report& r) {
  for (const auto& c : r.checks)
    if (c.status == Status::fail) return false;
  return true;
}

}  // namespace

TEST_CASE("report semantics and JSON") {
  Report empty{"nothing", Json::object(), {}};
  CHECK(empty.passed());
  CHECK(emit_report(empty, Format::json) == R"({"suite":"nothing","params":{},"checks":[],"passed":true})");

  Report r{"demo", Json{{"order", 3}}, {}};
  r.add("a", true, "ok");
  r.skip("b", "too slow");
  CHECK(r.passed());
  r.add("c", false, "broken");
  CHECK_FALSE(r.passed());
  const auto text = emit_report(r, Format::json);
  CHECK(parse_report(text) == r);
  CHECK(emit_report(parse_report(text), Format::json) == text);
  CHECK(emit_report(r, Format::text).find("[skipped] b: too slow") != std::string::npos);

  CHECK_THROWS(parse_report(R"({"suite":"x","params":{},"checks":[],"passed":false})"));
  CHECK_THROWS(parse_report(R"({"suite":"x","params":{},"checks":[{"name":"a","status":"maybe","detail":""}],"passed":true})"));
  CHECK_THROWS(parse_report("not json"));
  CHECK_THROWS(parse_report(R"({"suite":"x"})"));
}

TEST_CASE("alpha_k") {
  CHECK(alpha_k(0) == 0);
  CHECK(alpha_k(1) == 5);
  CHECK(alpha_k(2) == 0);
  CHECK(alpha_k(3) == 9);
}

TEST_CASE("master series") {
  const MasterSeries m(200);
  CHECK(m.order() == 200);
  CHECK(m.residue(4, 256) == 6);
  CHECK_THROWS(m.residue(4, 5));
  CHECK_THROWS_AS(m.residue(200, 8), BudgetExceeded);
  const auto p = m.progression(3, 1, 8, 10);
  CHECK(p.order() == 10);
  CHECK(p.coeff(1) == m.residue(4, 8));
  CHECK_THROWS_AS(m.progression(30, 0, 8, 10), BudgetExceeded);
  CHECK_THROWS_AS(MasterSeries(kOrderBudget + 1), BudgetExceeded);
}

TEST_CASE("family tables") {
  CHECK(powers_of_two_families().size() == 17);
  const auto c0 = conjectured_power_of_two_families(0);
  REQUIRE(c0.size() == 4);
  CHECK(c0[0].a == 3);
  CHECK(c0[0].modulus == 4);
  CHECK(c0[1].a == 6);
  CHECK(c0[1].b == 3);
  CHECK(table1_rows().size() == 22);
}

TEST_CASE("small suites pass") {
  CHECK(all_pass(dissection_suite(120)));
  CHECK(all_pass(binomial_lemma_suite(100)));
  CHECK(all_pass(intermediate_steps(60)));
  CHECK(all_pass(coexistence(1, 60)));
  CHECK(all_pass(powers_of_two_suite(3000, 3)));
  CHECK(all_pass(thm1_family(5, 5, 1)));
  CHECK(all_pass(lin_conjecture(1, 20)));
  CHECK_THROWS(thm1_family(7, 5, 0));
  CHECK_THROWS(thm1_family(25, 5, 0));
  CHECK_THROWS(dissection_suite(3));
}

TEST_CASE("genfun suite reaches the Sturm bound for k = 0") {
  const auto r = genfun_congruences(0, 50, 0);
  CHECK(all_pass(r));
  bool saw_sturm = false;
  for (const auto& c : r.checks)
    if (c.detail.find("Sturm bound 30 ") != std::string::npos) saw_sturm = true;
  CHECK(saw_sturm);
  const auto skipped = genfun_congruences(1, 50, 0);
  CHECK(skipped.checks.back().status == Status::skipped);
  CHECK(skipped.params.at("evidence") == "finite-depth-evidence");
}

TEST_CASE("runner determinism and parallel agreement") {
  SuiteParams params;
  params.identity_order = 60;
  params.powers_order = 2000;
  params.thm1_n_max = 3;
  params.thm1_ell_max = 1;
  params.k_max = 1;
  params.sturm_k_max = 0;
  params.genfun_order = 40;
  params.lin_n_max = 10;
  params.intermediate_order = 40;
  params.coexistence_order = 40;
  const std::vector<std::string> names = {"dissection", "binomial", "thm1", "powers2", "genfun",
                                          "lin", "intermediate", "coexistence"};
  const auto a = run_suites(names, params, false);
  const auto b = run_suites(names, params, true);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(emit_report(a[i], Format::json) == emit_report(b[i], Format::json));
    CHECK(a[i].passed());
  }
  CHECK_THROWS(run_suites({"nope"}, params));
}

TEST_CASE("table suite flags only the misprinted bound") {
  const auto r = table1_suite();
  CHECK(r.checks.size() == 44);
  std::vector<std::string> failed;
  for (const auto& c : r.checks)
    if (c.status == Status::fail) failed.push_back(c.name);
  CHECK(failed == std::vector<std::string>{"m=6 t=5 u=8 floor(nu) equals tabulated 6"});
}
