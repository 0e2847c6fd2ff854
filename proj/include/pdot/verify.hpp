#pragma once

// Verification suites for PDO_t congruences, q-series identities and the
// Radu certificates. Every suite returns a Report; nothing here proves a
// statement for all n, the suites check finite truncations and certificates.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "pdot/radu.hpp"
#include "pdot/series.hpp"

namespace pdot::verify {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, skipped };

std::string_view to_string(Status s);
Status status_from_string(std::string_view s);

struct Check {
  std::string name;
  Status status = Status::pass;
  std::string detail;

  bool operator==(const Check&) const = default;
};

struct Report {
  std::string suite;
  Json params = Json::object();
  std::vector<Check> checks;

  /// True iff no check failed.
  bool passed() const;
  void add(std::string name, bool ok, std::string detail = {});
  void skip(std::string name, std::string detail);

  bool operator==(const Report&) const = default;
};

enum class Format { json, text };

std::string emit_report(const Report& report, Format format);
/// Parses the JSON form. Throws std::invalid_argument on schema violations,
/// including a "passed" field that disagrees with the checks.
Report parse_report(std::string_view json_text);

/// Indices a*n + b with a congruence modulus.
struct CongruenceFamily {
  std::string name;
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::uint64_t modulus = 2;
  std::optional<int> k_parameter;
};

/// 2k + 3 for odd k, 0 for even k.
int alpha_k(int k);

/// Thrown when a suite needs more coefficients than the available budget.
class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Largest master-series order any suite may request.
inline constexpr std::size_t kOrderBudget = 1000000;

/// sum PDO_t(n) q^n modulo 2^8 * 3^6, the least common multiple of every
/// modulus the suites use. Built once and shared read-only.
class MasterSeries {
 public:
  static constexpr std::uint64_t kModulus = 256 * 729;

  explicit MasterSeries(std::size_t order);

  std::size_t order() const { return series_.order(); }
  /// PDO_t(n) mod `modulus`; modulus must divide kModulus.
  std::uint64_t residue(std::size_t n, std::uint64_t modulus) const;
  /// sum_n PDO_t(a n + b) q^n mod `modulus`, order `terms`.
  series::TruncSeries progression(std::int64_t a, std::int64_t b, std::uint64_t modulus,
                                  std::size_t terms) const;

 private:
  series::TruncSeries series_;
};

/// One row of the Radu table for r = (-2, 1, 2, 0, -1, 2), M = N = 12,
/// r' = (r1, 0, 0, 0, 0, 0).
struct Table1Row {
  std::int64_t m;
  std::int64_t t;
  std::int64_t r_prime_1;
  std::int64_t nu_floor;
  std::uint64_t u;
};

std::span<const Table1Row> table1_rows();
radu::RaduInstance table1_instance(const Table1Row& row);
radu::AuxExponents table1_aux(const Table1Row& row);

Report dissection_suite(std::size_t order);

/// f_1^{p^k} = f_p^{p^{k-1}} mod p^k for each prime in `primes` and k <= k_max.
Report binomial_lemma_suite(std::size_t order, std::vector<std::int64_t> primes = {2, 3, 5}, int k_max = 3);

Report thm1_family(std::int64_t p, int n_max, int ell_max);
Report thm1_family(const MasterSeries& master, std::int64_t p, int n_max, int ell_max);
std::size_t thm1_required_order(std::int64_t p, int n_max, int ell_max);

/// The seventeen powers-of-two families below `order`, plus the conjectured
/// 3*2^k families for k <= conj_k_max.
Report powers_of_two_suite(std::size_t order, int conj_k_max = 6);
Report powers_of_two_suite(const MasterSeries& master, std::size_t order, int conj_k_max = 6);
std::vector<std::pair<std::string, std::vector<CongruenceFamily>>> powers_of_two_families();
std::vector<CongruenceFamily> conjectured_power_of_two_families(int k);

/// Generating functions of PDO_t(8*3^k n) and PDO_t(12*3^k n) modulo 3^{k+3}
/// against their eta-product targets, to `order` coefficients. When
/// k <= sturm_k_max the comparison is also carried to the Sturm bounds, both
/// on the dissected master series and on U^k(3) of the level 18/36
/// eta-quotients.
Report genfun_congruences(int k, std::size_t order, int sturm_k_max = 2);
Report genfun_congruences(const MasterSeries& master, int k, std::size_t order, int sturm_k_max = 2);
std::size_t genfun_required_order(int k, std::size_t order, int sturm_k_max = 2);

Report lin_conjecture(int k_max, int n_max);
Report lin_conjecture(const MasterSeries& master, int k_max, int n_max);

Report intermediate_steps(std::size_t order);
Report intermediate_steps(const MasterSeries& master, std::size_t order);

Report coexistence(int k_max, std::size_t order);
Report coexistence(const MasterSeries& master, int k_max, std::size_t order);

Report table1_suite();

struct SuiteParams {
  std::size_t identity_order = 500;
  std::size_t binomial_order = 300;
  std::int64_t thm1_p = 5;
  int thm1_n_max = 20;
  int thm1_ell_max = 2;
  std::size_t powers_order = 20000;
  int conj1_k_max = 6;
  int k_max = 3;
  std::size_t genfun_order = 100;
  int sturm_k_max = 3;
  int lin_n_max = 40;
  std::size_t intermediate_order = 200;
  std::size_t coexistence_order = 200;
};

std::vector<std::string> suite_names();

/// Runs the named suites on one shared master series sized for all of them.
std::vector<Report> run_suites(const std::vector<std::string>& names, const SuiteParams& params,
                               bool parallel = false);

}  // namespace pdot::verify
