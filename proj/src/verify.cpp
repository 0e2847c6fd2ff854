#include "pdot/verify.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pdot/modforms.hpp"
#include "pdot/partitions.hpp"

namespace pdot::verify {

using series::Domain;
using series::EulerTerm;
using series::TruncSeries;

namespace {

constexpr const char* kFiniteDepth = "finite-depth-evidence";

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// coef * q^shift * prod f_m^e.
struct Term {
  BigInt coef;
  std::size_t q_power;
  std::vector<EulerTerm> factors;
};

TruncSeries eval_terms(const std::vector<Term>& terms, std::size_t order, Domain domain) {
  TruncSeries sum(order, domain);
  for (const auto& t : terms) {
    if (t.q_power >= order) continue;
    const auto body = series::euler_quotient(t.factors, order - t.q_power, domain);
    sum = series::ring_add(sum, series::scale(series::shift(body, t.q_power), t.coef));
  }
  return sum;
}

std::optional<std::size_t> first_mismatch(const TruncSeries& a, const TruncSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  for (std::size_t n = 0; n < order; ++n)
    if (a.coeff(n) != b.coeff(n)) return n;
  return std::nullopt;
}

// Adds a pass/fail check comparing two series over their common order.
void compare_series(Report& report, std::string name, const TruncSeries& lhs, const TruncSeries& rhs,
                    const std::string& note = {}) {
  const std::size_t order = std::min(lhs.order(), rhs.order());
  const auto bad = first_mismatch(lhs, rhs);
  std::ostringstream detail;
  if (!note.empty()) detail << note << "; ";
  if (bad)
    detail << "first mismatch at q^" << *bad << ": " << lhs.coeff(*bad) << " vs " << rhs.coeff(*bad) << " in "
           << lhs.domain().to_string();
  else
    detail << "coefficients 0.." << (order == 0 ? 0 : order - 1) << " agree in " << lhs.domain().to_string();
  report.add(std::move(name), !bad.has_value(), detail.str());
}

std::string progression_label(std::int64_t a, std::int64_t b) {
  std::ostringstream out;
  out << "PDO_t(";
  if (a != 1) out << a;
  out << 'n';
  if (b != 0) out << '+' << b;
  out << ')';
  return out.str();
}

std::string family_label(std::int64_t a, std::int64_t b, std::uint64_t modulus) {
  return progression_label(a, b) + " = 0 mod " + std::to_string(modulus);
}

struct ProgressionScan {
  std::size_t checked = 0;
  std::optional<std::int64_t> failing_n;
  std::uint64_t residue = 0;
};

// PDO_t(a n + b) mod `modulus` for 0 <= n and a n + b < limit.
ProgressionScan scan_zero(const MasterSeries& master, std::int64_t a, std::int64_t b, std::uint64_t modulus,
                          std::int64_t limit) {
  ProgressionScan scan;
  for (std::int64_t n = 0; a * n + b < limit; ++n) {
    const std::uint64_t r = master.residue(static_cast<std::size_t>(a * n + b), modulus);
    ++scan.checked;
    if (r != 0) {
      scan.failing_n = n;
      scan.residue = r;
      break;
    }
  }
  return scan;
}

void add_scan(Report& report, std::string name, const ProgressionScan& scan, std::int64_t a, std::int64_t b,
              const std::string& label_prefix = {}) {
  std::ostringstream detail;
  if (!label_prefix.empty()) detail << label_prefix << "; ";
  if (scan.failing_n)
    detail << "fails at n = " << *scan.failing_n << " (index " << a * *scan.failing_n + b << ", residue "
           << scan.residue << ")";
  else
    detail << scan.checked << " values checked";
  report.add(std::move(name), !scan.failing_n.has_value(), detail.str());
}

std::size_t max_index_plus_one(std::int64_t a, std::int64_t b, std::size_t terms) {
  if (terms == 0) return 0;
  return static_cast<std::size_t>(a * static_cast<std::int64_t>(terms - 1) + b + 1);
}

TruncSeries target8(int k, std::size_t order, Domain d) {
  return eval_terms({{BigInt(ipow(2, k + 2)) * ipow(3, k + 2), 1, {{1, 2}, {2, 2}, {3, 2}, {6, 2}}}}, order, d);
}

TruncSeries target12(int k, std::size_t order, Domain d) {
  return eval_terms({{BigInt(ipow(2, alpha_k(k))) * ipow(3, k + 2), 1, {{6, 4}}}}, order, d);
}

bool trivial_character(const modforms::EtaQuotient& eq) {
  for (std::int64_t d = 1; d <= 4 * eq.level; ++d)
    if (gcd(d, eq.level) == 1 && modforms::character_value(eq, d) != 1) return false;
  return true;
}

void add_modularity(Report& report, const std::string& label, const modforms::EtaQuotient& eq,
                    std::int64_t expected_weight) {
  const auto v = modforms::modularity_check(eq);
  const bool ok = v.conditions_hold() && v.holomorphic && v.weight == expected_weight && trivial_character(eq);
  std::ostringstream detail;
  detail << modforms::format_eta(eq) << ": weight " << (v.weight ? std::to_string(*v.weight) : "half-integral")
         << ", sum delta r = 0 mod 24: " << v.condition_24_delta
         << ", sum (N/delta) r = 0 mod 24: " << v.condition_24_N_over_delta << ", holomorphic: " << v.holomorphic;
  report.add(label, ok, detail.str());
}

void add_congruence(Report& report, std::string name, const TruncSeries& a, const TruncSeries& b,
                    std::uint64_t modulus, std::size_t bound, const std::string& note) {
  const auto r = modforms::congruent_upto(a, b, BigInt(modulus), bound);
  std::ostringstream detail;
  detail << note << "; ";
  if (r.holds)
    detail << "coefficients 0.." << bound << " agree mod " << modulus;
  else
    detail << "first difference at q^" << *r.first_failure << ": " << r.lhs_residue << " vs " << r.rhs_residue
           << " mod " << modulus;
  report.add(std::move(name), r.holds, detail.str());
}

void require_budget(std::size_t order, const char* suite) {
  if (order > kOrderBudget)
    throw BudgetExceeded(std::string(suite) + ": needs " + std::to_string(order) +
                         " coefficients, budget is " + std::to_string(kOrderBudget));
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "fail";
}

Status status_from_string(std::string_view s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "skipped") return Status::skipped;
  throw std::invalid_argument("unknown check status '" + std::string(s) + "'");
}

bool Report::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == Status::fail; });
}

void Report::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok ? Status::pass : Status::fail, std::move(detail)});
}

void Report::skip(std::string name, std::string detail) {
  checks.push_back({std::move(name), Status::skipped, std::move(detail)});
}

std::string emit_report(const Report& report, Format format) {
  if (format == Format::json) {
    Json checks = Json::array();
    for (const auto& c : report.checks)
      checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    const Json j = {{"suite", report.suite}, {"params", report.params}, {"checks", checks}, {"passed", report.passed()}};
    return j.dump();
  }
  std::ostringstream out;
  out << "suite: " << report.suite << '\n';
  out << "params: " << report.params.dump() << '\n';
  for (const auto& c : report.checks) out << '[' << to_string(c.status) << "] " << c.name << ": " << c.detail << '\n';
  out << "passed: " << (report.passed() ? "true" : "false") << '\n';
  return out.str();
}

Report parse_report(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("report: ") + e.what());
  }
  try {
    Report r;
    r.suite = j.at("suite").get<std::string>();
    r.params = j.at("params");
    if (!r.params.is_object()) throw std::invalid_argument("report: params must be an object");
    for (const auto& c : j.at("checks"))
      r.checks.push_back({c.at("name").get<std::string>(), status_from_string(c.at("status").get<std::string>()),
                          c.at("detail").get<std::string>()});
    if (j.at("passed").get<bool>() != r.passed())
      throw std::invalid_argument("report: 'passed' disagrees with the check statuses");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("report: ") + e.what());
  }
}

int alpha_k(int k) { return k % 2 != 0 ? 2 * k + 3 : 0; }

MasterSeries::MasterSeries(std::size_t order) : series_(0, Domain::residue(kModulus)) {
  require_budget(order, "master series");
  series_ = partitions::pdo_t_series(order, Domain::residue(kModulus));
}

std::uint64_t MasterSeries::residue(std::size_t n, std::uint64_t modulus) const {
  if (modulus == 0 || kModulus % modulus != 0)
    throw std::invalid_argument("master series: modulus " + std::to_string(modulus) + " does not divide " +
                                std::to_string(kModulus));
  if (n >= series_.order())
    throw BudgetExceeded("master series: index " + std::to_string(n) + " beyond order " +
                         std::to_string(series_.order()));
  return series_.residues()[n] % modulus;
}

TruncSeries MasterSeries::progression(std::int64_t a, std::int64_t b, std::uint64_t modulus,
                                      std::size_t terms) const {
  if (a < 1 || b < 0) throw std::invalid_argument("progression: need a >= 1 and b >= 0");
  const std::size_t needed = max_index_plus_one(a, b, terms);
  if (needed > series_.order())
    throw BudgetExceeded("master series: " + progression_label(a, b) + " to " + std::to_string(terms) +
                         " terms needs order " + std::to_string(needed) + ", have " +
                         std::to_string(series_.order()));
  TruncSeries out(terms, Domain::residue(modulus));
  auto& dst = out.mutable_residues();
  for (std::size_t n = 0; n < terms; ++n) dst[n] = residue(static_cast<std::size_t>(a) * n + b, modulus);
  return out;
}

std::span<const Table1Row> table1_rows() {
  static const Table1Row rows[] = {
      {6, 2, 5, 6, 4},          {6, 5, 5, 6, 8},
      {12, 2, 10, 11, 4},       {12, 5, 10, 11, 8},       {12, 8, 10, 10, 4},       {12, 11, 10, 10, 16},
      {24, 5, 20, 20, 8},       {24, 11, 20, 20, 16},     {24, 17, 20, 20, 8},      {24, 23, 20, 20, 32},
      {48, 11, 40, 40, 16},     {48, 23, 40, 39, 32},     {48, 35, 40, 39, 16},     {48, 47, 40, 39, 64},
      {96, 23, 80, 78, 32},     {96, 47, 80, 78, 64},     {96, 71, 80, 77, 32},     {96, 95, 80, 77, 128},
      {192, 47, 160, 155, 64},  {192, 95, 160, 154, 128}, {192, 143, 160, 154, 64}, {192, 191, 160, 154, 256},
  };
  return rows;
}

radu::RaduInstance table1_instance(const Table1Row& row) {
  return radu::RaduInstance{row.m, 12, 12, {-2, 1, 2, 0, -1, 2}, row.t};
}

radu::AuxExponents table1_aux(const Table1Row& row) { return radu::AuxExponents{{row.r_prime_1, 0, 0, 0, 0, 0}}; }

// ---------------------------------------------------------------------------

Report dissection_suite(std::size_t order) {
  if (order < 10) throw std::invalid_argument("dissection_suite: order must be >= 10");
  const Domain zz = Domain::exact();
  const std::size_t T = order;
  Report report;
  report.suite = "dissection";
  report.params = {{"order", T}};

  compare_series(report, "2-dissection of f1*f3", series::euler_quotient({{1, 1}, {3, 1}}, T),
                 eval_terms({{1, 0, {{2, 1}, {8, 2}, {12, 4}, {4, -2}, {6, -1}, {24, -2}}},
                             {-1, 1, {{4, 4}, {6, 1}, {24, 2}, {2, -1}, {8, -2}, {12, -2}}}},
                            T, zz));

  compare_series(report, "2-dissection of f3/f1^3", series::euler_quotient({{3, 1}, {1, -3}}, T),
                 eval_terms({{1, 0, {{4, 6}, {6, 3}, {2, -9}, {12, -2}}},
                             {3, 1, {{4, 2}, {6, 1}, {12, 2}, {2, -7}}}},
                            T, zz));

  const auto cube = series::euler_factor(1, 3, T);
  compare_series(report, "3-dissection of f1^3",
                 cube,
                 eval_terms({{1, 0, {{6, 1}, {9, 6}, {3, -1}, {18, -3}}},
                             {-3, 1, {{9, 3}}},
                             {4, 3, {{3, 2}, {18, 6}, {6, -2}, {9, -3}}}},
                            T, zz));
  compare_series(report, "f1^3 product equals the triangular-number sum", cube, series::jacobi_cube(T));

  compare_series(report, "3-dissection of f1^2/f2", series::euler_quotient({{1, 2}, {2, -1}}, T),
                 eval_terms({{1, 0, {{9, 2}, {18, -1}}}, {-2, 1, {{3, 1}, {18, 2}, {6, -1}, {9, -1}}}}, T, zz));

  compare_series(report, "3-dissection of f2/f1^2", series::euler_quotient({{2, 1}, {1, -2}}, T),
                 eval_terms({{1, 0, {{6, 4}, {9, 6}, {3, -8}, {18, -3}}},
                             {2, 1, {{6, 3}, {9, 3}, {3, -7}}},
                             {4, 2, {{6, 2}, {18, 3}, {3, -6}}}},
                            T, zz));

  // 1/f1^3 = f9^3/f3^10 (c(q^3)^2 + 3q c(q^3) f9^3/f3 + 9q^2 f9^6/f3^2)
  {
    const auto c3 = series::inflate(series::cubic_theta((T + 2) / 3), 3, T);
    const auto prefactor = series::euler_quotient({{9, 3}, {3, -10}}, T);
    auto inner = series::ring_mul(c3, c3);
    inner = series::ring_add(inner, series::ring_mul(c3, eval_terms({{3, 1, {{9, 3}, {3, -1}}}}, T, zz)));
    inner = series::ring_add(inner, eval_terms({{9, 2, {{9, 6}, {3, -2}}}}, T, zz));
    compare_series(report, "3-dissection of 1/f1^3 via the cubic theta function", series::euler_factor(1, -3, T),
                   series::ring_mul(prefactor, inner));
  }
  return report;
}

Report binomial_lemma_suite(std::size_t order, std::vector<std::int64_t> primes, int k_max) {
  Report report;
  report.suite = "binomial_lemma";
  report.params = {{"order", order}, {"primes", primes}, {"k_max", k_max}};
  for (const auto p : primes) {
    if (p < 2 || factorize(p).size() != 1 || factorize(p).front().second != 1)
      throw std::invalid_argument("binomial_lemma_suite: " + std::to_string(p) + " is not prime");
    for (int k = 1; k <= k_max; ++k) {
      const auto modulus = static_cast<std::uint64_t>(ipow(p, k));
      const Domain ring = Domain::residue(modulus);
      compare_series(report,
                     "f1^" + std::to_string(ipow(p, k)) + " = f" + std::to_string(p) + "^" +
                         std::to_string(ipow(p, k - 1)) + " mod " + std::to_string(modulus),
                     series::euler_factor(1, ipow(p, k), order, ring),
                     series::euler_factor(p, ipow(p, k - 1), order, ring));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

std::size_t thm1_required_order(std::int64_t p, int n_max, int ell_max) {
  const std::int64_t base = 24 * p * p * n_max + 24 * (p - 1) * p + 12 * p * p;
  return static_cast<std::size_t>(ipow(3, std::max(ell_max, 0)) * base + 1);
}

namespace {

void require_thm1_prime(std::int64_t p) {
  if (p < 5 || p % 6 != 5 || !is_squarefree(p) || factorize(p).size() != 1)
    throw std::invalid_argument("thm1_family: p = " + std::to_string(p) + " must be a prime with p = -1 mod 6");
}

}  // namespace

Report thm1_family(std::int64_t p, int n_max, int ell_max) {
  require_thm1_prime(p);
  return thm1_family(MasterSeries(thm1_required_order(p, n_max, ell_max)), p, n_max, ell_max);
}

Report thm1_family(const MasterSeries& master, std::int64_t p, int n_max, int ell_max) {
  require_thm1_prime(p);
  if (n_max < 0 || ell_max < 0) throw std::invalid_argument("thm1_family: n_max and ell_max must be >= 0");
  Report report;
  report.suite = "thm1_family";
  report.params = {{"p", p}, {"n_max", n_max}, {"ell_max", ell_max}};

  const int symbol = modforms::kronecker_symbol(-3, p);
  report.add("-3 is a quadratic nonresidue mod p", symbol == -1,
             "kronecker(-3, " + std::to_string(p) + ") = " + std::to_string(symbol));

  for (std::int64_t k = 1; k <= p - 1; ++k) {
    const std::int64_t p2 = p * p;
    const struct {
      std::int64_t a, b;
      std::uint64_t modulus;
    } families[] = {{6 * p2, 6 * k * p + 3 * p2, 8}, {24 * p2, 24 * k * p + 12 * p2, 32}};
    for (const auto& f : families) {
      for (int ell = 0; ell <= ell_max; ++ell) {
        const std::int64_t scale = ipow(3, ell);
        const std::int64_t a = scale * f.a, b = scale * f.b;
        const auto scan = scan_zero(master, a, b, f.modulus, a * n_max + b + 1);
        std::string name = family_label(a, b, f.modulus) + " [k=" + std::to_string(k);
        if (ell > 0) name += ", 3^" + std::to_string(ell) + " scaling";
        name += "]";
        add_scan(report, std::move(name), scan, a, b);
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<std::pair<std::string, std::vector<CongruenceFamily>>> powers_of_two_families() {
  const std::vector<std::vector<std::array<std::int64_t, 3>>> table = {
      {{6, 0, 8}},     {{12, 0, 16}},    {{24, 0, 32}},    {{48, 0, 64}},    {{96, 0, 128}},
      {{192, 0, 256}}, {{6, 3, 4}},      {{12, 6, 8}},     {{24, 12, 16}},   {{48, 24, 32}},
      {{96, 48, 64}},  {{192, 96, 128}}, {{12, 3, 4}, {12, 9, 4}},            {{24, 6, 8}, {24, 18, 8}},
      {{48, 12, 16}, {48, 36, 16}},      {{96, 24, 32}, {96, 72, 32}},        {{192, 48, 64}, {192, 144, 64}},
  };
  std::vector<std::pair<std::string, std::vector<CongruenceFamily>>> out;
  for (const auto& group : table) {
    std::vector<CongruenceFamily> fams;
    std::string name;
    for (const auto& [a, b, mod] : group) {
      fams.push_back({family_label(a, b, static_cast<std::uint64_t>(mod)), a, b, static_cast<std::uint64_t>(mod), {}});
      name += (name.empty() ? "" : " and ") + progression_label(a, b);
    }
    name += " = 0 mod " + std::to_string(group.front()[2]);
    out.emplace_back(name, std::move(fams));
  }
  return out;
}

std::vector<CongruenceFamily> conjectured_power_of_two_families(int k) {
  const std::int64_t p2k = ipow(2, k);
  const auto modulus = static_cast<std::uint64_t>(ipow(2, k + 2));
  const std::array<std::array<std::int64_t, 2>, 4> shapes = {{
      {3 * p2k, 0},
      {3 * 2 * p2k, 3 * p2k},
      {3 * 4 * p2k, 3 * p2k},
      {3 * 4 * p2k, 9 * p2k},
  }};
  std::vector<CongruenceFamily> out;
  for (const auto& [a, b] : shapes) out.push_back({family_label(a, b, modulus), a, b, modulus, k});
  return out;
}

Report powers_of_two_suite(std::size_t order, int conj_k_max) {
  return powers_of_two_suite(MasterSeries(order), order, conj_k_max);
}

Report powers_of_two_suite(const MasterSeries& master, std::size_t order, int conj_k_max) {
  Report report;
  report.suite = "powers_of_two";
  report.params = {{"order", order}, {"conj_k_max", conj_k_max}, {"conjecture_label", kFiniteDepth}};
  const auto limit = static_cast<std::int64_t>(order);
  for (const auto& [name, fams] : powers_of_two_families()) {
    bool ok = true;
    std::ostringstream detail;
    std::size_t checked = 0;
    for (const auto& f : fams) {
      const auto scan = scan_zero(master, f.a, f.b, f.modulus, limit);
      checked += scan.checked;
      if (scan.failing_n) {
        ok = false;
        detail << progression_label(f.a, f.b) << " fails at n = " << *scan.failing_n << " (residue "
               << scan.residue << "); ";
      }
    }
    detail << checked << " values below " << order << " checked";
    report.add(name, ok, detail.str());
  }
  for (int k = 0; k <= conj_k_max; ++k)
    for (const auto& f : conjectured_power_of_two_families(k))
      add_scan(report, f.name + " [conjectured, k=" + std::to_string(k) + "]",
               scan_zero(master, f.a, f.b, f.modulus, limit), f.a, f.b, kFiniteDepth);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t sturm_8(int k) {
  return static_cast<std::size_t>(modforms::sturm_bound(ipow(3, k + 2) + 1, 18, true));
}
std::size_t sturm_12(int k) {
  return static_cast<std::size_t>(modforms::sturm_bound(ipow(3, k + 2) + 1, 36, true));
}

}  // namespace

std::size_t genfun_required_order(int k, std::size_t order, int sturm_k_max) {
  const std::int64_t a8 = 8 * ipow(3, k), a12 = 12 * ipow(3, k);
  std::size_t need = std::max(max_index_plus_one(a8, 0, order), max_index_plus_one(a12, 0, order));
  if (k <= sturm_k_max) {
    need = std::max(need, max_index_plus_one(a8, 0, sturm_8(k) + 1));
    need = std::max(need, max_index_plus_one(a12, 0, sturm_12(k) + 1));
  }
  return need;
}

Report genfun_congruences(int k, std::size_t order, int sturm_k_max) {
  if (k < 0) throw std::invalid_argument("genfun_congruences: k must be >= 0");
  const std::size_t need = genfun_required_order(k, order, sturm_k_max);
  require_budget(need, "genfun_congruences");
  return genfun_congruences(MasterSeries(need), k, order, sturm_k_max);
}

Report genfun_congruences(const MasterSeries& master, int k, std::size_t order, int sturm_k_max) {
  if (k < 0) throw std::invalid_argument("genfun_congruences: k must be >= 0");
  const auto modulus = static_cast<std::uint64_t>(ipow(3, k + 3));
  const Domain ring = Domain::residue(modulus);
  const std::int64_t a8 = 8 * ipow(3, k), a12 = 12 * ipow(3, k);
  const std::string k_tag = " [k=" + std::to_string(k) + "]";

  Report report;
  report.suite = "genfun_congruences";
  report.params = {{"k", k}, {"order", order}, {"modulus", modulus}, {"sturm_k_max", sturm_k_max}};
  if (k > sturm_k_max) report.params["evidence"] = kFiniteDepth;

  compare_series(report, "sum " + progression_label(a8, 0) + " q^n = 2^" + std::to_string(k + 2) + "*3^" +
                             std::to_string(k + 2) + " q f1^2 f2^2 f3^2 f6^2" + k_tag,
                 master.progression(a8, 0, modulus, order), target8(k, order, ring));
  compare_series(report, "sum " + progression_label(a12, 0) + " q^n = 2^" + std::to_string(alpha_k(k)) + "*3^" +
                             std::to_string(k + 2) + " q f6^4" + k_tag,
                 master.progression(a12, 0, modulus, order), target12(k, order, ring));

  if (k > sturm_k_max) {
    report.skip("Sturm-bound comparisons" + k_tag,
                "k exceeds sturm_k_max = " + std::to_string(sturm_k_max) + "; bounds " +
                    std::to_string(sturm_8(k)) + " and " + std::to_string(sturm_12(k)) + " not attempted");
    return report;
  }

  const std::int64_t wt = ipow(3, k + 2) + 1;
  const std::size_t b1 = sturm_8(k), b2 = sturm_12(k);
  const auto a1 = modforms::a_k1(k), bb1 = modforms::b_k1(k);
  const auto a2 = modforms::a_k2(k + 1), bb2 = modforms::b_k2(k + 1);
  add_modularity(report, "A(k,1) is a holomorphic level 18 form of weight " + std::to_string(wt) + k_tag, a1, wt);
  add_modularity(report, "B(k,1) is a holomorphic level 18 form of weight " + std::to_string(wt) + k_tag, bb1, wt);
  add_modularity(report, "A(k+1,2) is a holomorphic level 36 form of weight " + std::to_string(wt) + k_tag, a2, wt);
  add_modularity(report, "B(k+1,2) is a holomorphic level 36 form of weight " + std::to_string(wt) + k_tag, bb2,
                 wt);

  const std::string note1 = "Sturm bound " + std::to_string(b1) + " for weight " + std::to_string(wt) + ", level 18";
  const std::string note2 = "Sturm bound " + std::to_string(b2) + " for weight " + std::to_string(wt) + ", level 36";

  const auto t8 = target8(k, b1 + 1, ring);
  add_congruence(report, "dissected " + progression_label(a8, 0) + " series vs target to the Sturm bound" + k_tag,
                 master.progression(a8, 0, modulus, b1 + 1), t8, modulus, b1, note1);
  const auto f_k1 = modforms::u_operator_power(
      modforms::q_expansion(a1, static_cast<std::size_t>(ipow(3, k)) * (b1 + 1), ring), 3, k);
  const auto b_series1 = modforms::q_expansion(bb1, b1 + 1, ring);
  add_congruence(report, "A(k,1) | U(3)^k = B(k,1) to the Sturm bound" + k_tag, f_k1, b_series1, modulus, b1,
                 note1);
  add_congruence(report, "B(k,1) reduces to 2^(k+2)*3^(k+2) q f1^2 f2^2 f3^2 f6^2" + k_tag, b_series1, t8, modulus,
                 b1, note1);

  const auto t12 = target12(k, b2 + 1, ring);
  add_congruence(report, "dissected " + progression_label(a12, 0) + " series vs target to the Sturm bound" + k_tag,
                 master.progression(a12, 0, modulus, b2 + 1), t12, modulus, b2, note2);
  const auto f_k2 = modforms::u_operator_power(
      modforms::q_expansion(a2, static_cast<std::size_t>(ipow(3, k + 1)) * (b2 + 1), ring), 3, k + 1);
  const auto b_series2 = modforms::q_expansion(bb2, b2 + 1, ring);
  add_congruence(report, "A(k+1,2) | U(3)^(k+1) = B(k+1,2) to the Sturm bound" + k_tag, f_k2, b_series2, modulus,
                 b2, note2);
  add_congruence(report, "B(k+1,2) reduces to 2^alpha_k*3^(k+2) q f6^4" + k_tag, b_series2, t12, modulus, b2,
                 note2);
  return report;
}

// ---------------------------------------------------------------------------

Report lin_conjecture(int k_max, int n_max) {
  if (k_max < 0 || n_max < 0) throw std::invalid_argument("lin_conjecture: k_max and n_max must be >= 0");
  const std::size_t need = max_index_plus_one(12 * ipow(3, k_max), 0, static_cast<std::size_t>(n_max) + 1);
  require_budget(need, "lin_conjecture");
  return lin_conjecture(MasterSeries(need), k_max, n_max);
}

Report lin_conjecture(const MasterSeries& master, int k_max, int n_max) {
  if (k_max < 0 || n_max < 0) throw std::invalid_argument("lin_conjecture: k_max and n_max must be >= 0");
  Report report;
  report.suite = "lin_conjecture";
  report.params = {{"k_max", k_max}, {"n_max", n_max}, {"evidence", kFiniteDepth}};
  const auto terms = static_cast<std::size_t>(n_max) + 1;
  for (int k = 0; k <= k_max; ++k) {
    const auto modulus = static_cast<std::uint64_t>(ipow(3, k + 2));
    const auto fine = static_cast<std::uint64_t>(ipow(3, k + 3));
    const Domain fine_ring = Domain::residue(fine);
    const std::string k_tag = " [k=" + std::to_string(k) + "]";
    for (const std::int64_t a : {8 * ipow(3, k), 12 * ipow(3, k)}) {
      const auto scan = scan_zero(master, a, 0, modulus, a * n_max + 1);
      add_scan(report, family_label(a, 0, modulus) + k_tag, scan, a, 0, kFiniteDepth);

      // The 3-adic generating-function congruence carries the factor 3^{k+2},
      // so wherever it holds the divisibility must hold too.
      const auto target = (a == 8 * ipow(3, k)) ? target8(k, terms, fine_ring) : target12(k, terms, fine_ring);
      const bool genfun_holds = !first_mismatch(master.progression(a, 0, fine, terms), target).has_value();
      const bool divisible = !scan.failing_n.has_value();
      report.add("generating-function congruence implies " + family_label(a, 0, modulus) + k_tag,
                 !genfun_holds || divisible,
                 std::string("generating-function congruence ") + (genfun_holds ? "holds" : "does not hold") +
                     " for n <= " + std::to_string(n_max) + ", divisibility " +
                     (divisible ? "holds" : "fails"));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

Report intermediate_steps(std::size_t order) {
  if (order < 1) throw std::invalid_argument("intermediate_steps: order must be >= 1");
  return intermediate_steps(MasterSeries(max_index_plus_one(36, 0, order)), order);
}

Report intermediate_steps(const MasterSeries& master, std::size_t order) {
  if (order < 1) throw std::invalid_argument("intermediate_steps: order must be >= 1");
  const std::size_t T = order;
  Report report;
  report.suite = "intermediate_steps";
  report.params = {{"order", T}};

  const Domain z8 = Domain::residue(8), z32 = Domain::residue(32);
  const auto prog = [&](std::int64_t a, std::int64_t b, std::uint64_t mod) { return master.progression(a, b, mod, T); };

  compare_series(report, "sum PDO_t(3n) q^n = 4q f2^3 f6^3 mod 8", prog(3, 0, 8),
                 eval_terms({{4, 1, {{2, 3}, {6, 3}}}}, T, z8));
  compare_series(report, "sum PDO_t(6n+3) q^n = 4 f1^3 f3^3 mod 8", prog(6, 3, 8),
                 eval_terms({{4, 0, {{1, 3}, {3, 3}}}}, T, z8));
  compare_series(report, "sum PDO_t(6n) q^n = 16(q f2^12 + q^2 f2^6 f6^6) mod 32", prog(6, 0, 32),
                 eval_terms({{16, 1, {{2, 12}}}, {16, 2, {{2, 6}, {6, 6}}}}, T, z32));
  compare_series(report, "sum PDO_t(12n) q^n = 16q f2^3 f6^3 mod 32", prog(12, 0, 32),
                 eval_terms({{16, 1, {{2, 3}, {6, 3}}}}, T, z32));
  compare_series(report, "sum PDO_t(24n+12) q^n = 16 f1^3 f3^3 mod 32", prog(24, 12, 32),
                 eval_terms({{16, 0, {{1, 3}, {3, 3}}}}, T, z32));
  compare_series(report, "sum PDO_t(3n) q^n = 4q f6^4 - 12q^3 f6^3 f18^3 mod 8", prog(3, 0, 8),
                 eval_terms({{4, 1, {{6, 4}}}, {-12, 3, {{6, 3}, {18, 3}}}}, T, z8));
  compare_series(report, "sum PDO_t(9n) q^n = 4q f2^3 f6^3 mod 8", prog(9, 0, 8),
                 eval_terms({{4, 1, {{2, 3}, {6, 3}}}}, T, z8));
  compare_series(report, "sum PDO_t(36n) q^n = 16q f2^3 f6^3 mod 32", prog(36, 0, 32),
                 eval_terms({{16, 1, {{2, 3}, {6, 3}}}}, T, z32));

  // Exact identities on the integer series.
  const Domain zz = Domain::exact();
  const auto exact = partitions::pdo_t_series(max_index_plus_one(12, 0, T));
  compare_series(report, "sum PDO_t(6n) q^n = 16q f2^4 f3^3 f4^4 / f1^9 (exact)", series::dissect(exact, 6, 0),
                 eval_terms({{16, 1, {{2, 4}, {3, 3}, {4, 4}, {1, -9}}}}, T, zz));
  compare_series(report, "sum PDO_t(4n) q^n = 6q f2^3 f3^2 f6^3 / f1^6 (exact)", series::dissect(exact, 4, 0),
                 eval_terms({{6, 1, {{2, 3}, {3, 2}, {6, 3}, {1, -6}}}}, T, zz));
  compare_series(report, "sum PDO_t(8n) q^n = 36q f2^8 f3^7 / f1^13 (exact)", series::dissect(exact, 8, 0),
                 eval_terms({{36, 1, {{2, 8}, {3, 7}, {1, -13}}}}, T, zz));
  compare_series(report,
                 "sum PDO_t(12n) q^n = 432q^2 f2^10 f3^3 f6^6 / f1^17 + 144q f2^18 f3^7 / (f1^21 f6^2) (exact)",
                 series::dissect(exact, 12, 0),
                 eval_terms({{432, 2, {{2, 10}, {3, 3}, {6, 6}, {1, -17}}},
                             {144, 1, {{2, 18}, {3, 7}, {1, -21}, {6, -2}}}},
                            T, zz));
  return report;
}

// ---------------------------------------------------------------------------

Report coexistence(int k_max, std::size_t order) {
  if (k_max < 0) throw std::invalid_argument("coexistence: k_max must be >= 0");
  const std::size_t need = max_index_plus_one(12 * ipow(3, k_max), 0, order);
  require_budget(need, "coexistence");
  return coexistence(MasterSeries(need), k_max, order);
}

Report coexistence(const MasterSeries& master, int k_max, std::size_t order) {
  if (k_max < 0) throw std::invalid_argument("coexistence: k_max must be >= 0");
  Report report;
  report.suite = "coexistence";
  report.params = {{"k_max", k_max}, {"order", order}};
  for (int k = 0; k <= k_max; ++k) {
    const auto modulus = static_cast<std::uint64_t>(ipow(3, k + 2));
    const Domain ring = Domain::residue(modulus);
    const auto s8 = master.progression(8 * ipow(3, k), 0, modulus, order);
    const auto s12 = master.progression(12 * ipow(3, k), 0, modulus, order);
    const auto lhs = series::scale(series::ring_mul(series::euler_factor(2, 4, order, ring), s8),
                                   BigInt(ipow(2, alpha_k(k))));
    const auto rhs = series::scale(series::ring_mul(series::euler_factor(1, 8, order, ring), s12),
                                   BigInt(ipow(2, k + 2)));
    compare_series(report,
                   "2^" + std::to_string(alpha_k(k)) + " f2^4 sum PDO_t(" + std::to_string(8 * ipow(3, k)) +
                       "n) q^n = 2^" + std::to_string(k + 2) + " f1^8 sum PDO_t(" +
                       std::to_string(12 * ipow(3, k)) + "n) q^n mod " + std::to_string(modulus) + " [k=" +
                       std::to_string(k) + "]",
                   lhs, rhs);
  }
  return report;
}

// ---------------------------------------------------------------------------

Report table1_suite() {
  Report report;
  report.suite = "table1";
  report.params = {{"M", 12}, {"N", 12}, {"r", {-2, 1, 2, 0, -1, 2}}};

  std::size_t order = 0;
  for (const auto& row : table1_rows())
    order = std::max(order, static_cast<std::size_t>(row.m * row.nu_floor + row.t + 2));
  // a(n) = PDO_t(n + 1), checked independently of the certificate's own series.
  const auto pdo = partitions::pdo_t_series(order, Domain::residue(256));

  for (const auto& row : table1_rows()) {
    std::ostringstream name;
    name << "m=" << row.m << " t=" << row.t << " u=" << row.u;
    try {
      const auto cert = radu::radu_verify(table1_instance(row), table1_aux(row), row.u);
      const bool pset_ok = cert.p_set == std::vector<std::int64_t>{row.t};
      // Scan to whichever of the computed and tabulated bounds is larger.
      const auto scan_to = std::max<std::int64_t>(row.nu_floor, static_cast<std::int64_t>(cert.nu.floor));
      bool pdo_ok = true;
      for (std::int64_t n = 0; n <= scan_to; ++n)
        if (pdo.residues()[static_cast<std::size_t>(row.m * n + row.t + 1)] % row.u != 0) pdo_ok = false;
      std::ostringstream detail;
      detail << "Delta* " << (cert.delta_star.member() ? "holds" : "fails") << "; P = {";
      for (std::size_t i = 0; i < cert.p_set.size(); ++i) detail << (i ? "," : "") << cert.p_set[i];
      detail << "}; certificate verdict " << (cert.verdict ? "true" : "false") << "; "
             << family_label(row.m, row.t + 1, row.u) << " for n <= " << scan_to << ": "
             << (pdo_ok ? "holds" : "fails");
      report.add(name.str() + " certified", pset_ok && cert.verdict && pdo_ok, detail.str());
      report.add(name.str() + " floor(nu) equals tabulated " + std::to_string(row.nu_floor),
                 cert.nu.floor == row.nu_floor,
                 "nu = " + to_fraction_string(cert.nu.nu) + ", floor " + cert.nu.floor.str());
    } catch (const radu::RaduInapplicable& e) {
      report.add(name.str(), false, e.what());
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<std::string> suite_names() {
  return {"dissection", "binomial", "thm1", "powers2", "genfun", "lin", "intermediate", "coexistence", "table1"};
}

std::vector<Report> run_suites(const std::vector<std::string>& names, const SuiteParams& params, bool parallel) {
  const auto known = suite_names();
  for (const auto& n : names)
    if (std::find(known.begin(), known.end(), n) == known.end())
      throw std::invalid_argument("unknown suite '" + n + "'");

  std::size_t need = 1;
  for (const auto& n : names) {
    if (n == "thm1") need = std::max(need, thm1_required_order(params.thm1_p, params.thm1_n_max, params.thm1_ell_max));
    if (n == "powers2") need = std::max(need, params.powers_order);
    if (n == "genfun")
      for (int k = 0; k <= params.k_max; ++k)
        need = std::max(need, genfun_required_order(k, params.genfun_order, params.sturm_k_max));
    if (n == "lin")
      need = std::max(need, max_index_plus_one(12 * ipow(3, params.k_max), 0,
                                               static_cast<std::size_t>(params.lin_n_max) + 1));
    if (n == "intermediate") need = std::max(need, max_index_plus_one(36, 0, params.intermediate_order));
    if (n == "coexistence")
      need = std::max(need, max_index_plus_one(12 * ipow(3, params.k_max), 0, params.coexistence_order));
  }
  require_budget(need, "run_suites");
  const MasterSeries master(need);

  std::vector<std::function<Report()>> jobs;
  for (const auto& n : names) {
    if (n == "dissection") jobs.emplace_back([&] { return dissection_suite(params.identity_order); });
    if (n == "binomial") jobs.emplace_back([&] { return binomial_lemma_suite(params.binomial_order); });
    if (n == "thm1")
      jobs.emplace_back([&] { return thm1_family(master, params.thm1_p, params.thm1_n_max, params.thm1_ell_max); });
    if (n == "powers2")
      jobs.emplace_back([&] { return powers_of_two_suite(master, params.powers_order, params.conj1_k_max); });
    if (n == "genfun")
      for (int k = 0; k <= params.k_max; ++k)
        jobs.emplace_back([&, k] { return genfun_congruences(master, k, params.genfun_order, params.sturm_k_max); });
    if (n == "lin") jobs.emplace_back([&] { return lin_conjecture(master, params.k_max, params.lin_n_max); });
    if (n == "intermediate") jobs.emplace_back([&] { return intermediate_steps(master, params.intermediate_order); });
    if (n == "coexistence")
      jobs.emplace_back([&] { return coexistence(master, params.k_max, params.coexistence_order); });
    if (n == "table1") jobs.emplace_back([] { return table1_suite(); });
  }

  std::vector<Report> reports;
  if (parallel) {
    std::vector<std::future<Report>> futures;
    for (auto& job : jobs) futures.push_back(std::async(std::launch::async, job));
    for (auto& f : futures) reports.push_back(f.get());
  } else {
    for (auto& job : jobs) reports.push_back(job());
  }
  return reports;
}

}  // namespace pdot::verify
