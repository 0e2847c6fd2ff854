#pragma once

// Eta-quotients prod_{delta | N} eta(delta z)^{r_delta}: modularity conditions,
// Nebentypus character, orders at cusps, q-expansions, Sturm bounds and U(d).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdot/numeric.hpp"
#include "pdot/series.hpp"

namespace pdot::modforms {

struct EtaQuotient {
  std::int64_t level = 1;
  /// delta -> r_delta; absent divisors have exponent 0.
  std::map<std::int64_t, std::int64_t> exponents;
  BigInt scalar = 1;

  /// Throws std::invalid_argument unless level >= 1 and every key divides it.
  void validate() const;
  std::int64_t exponent_sum() const;
  /// sum_delta delta * r_delta.
  std::int64_t delta_weighted_sum() const;
  /// sum_delta (N / delta) * r_delta.
  std::int64_t level_weighted_sum() const;

  bool operator==(const EtaQuotient&) const = default;
};

/// Parses "N;scalar;d1:r1,d2:r2,...". The exponent list may be empty.
EtaQuotient parse_eta(std::string_view text);
/// Inverse of parse_eta with divisors ascending and zero exponents dropped.
std::string format_eta(const EtaQuotient& eq);

/// l = (sum r_delta) / 2. Throws std::domain_error for odd sums.
std::int64_t weight(const EtaQuotient& eq);

/// sign * prod p^e with possibly negative exponents.
struct FactoredRational {
  int sign = 1;
  std::map<std::int64_t, std::int64_t> prime_exponents;

  Rational value() const;
};

/// s = prod delta^{r_delta} in factored form.
FactoredRational character_base(const EtaQuotient& eq);

struct CuspOrder {
  std::int64_t denominator;  // d | N, cusps c/d
  Rational order;
};
using CuspOrderTable = std::vector<CuspOrder>;

struct ModularityVerdict {
  std::optional<std::int64_t> weight;  // empty when sum r_delta is odd
  bool integral_weight = false;
  bool condition_24_delta = false;
  bool condition_24_N_over_delta = false;
  FactoredRational character_s;
  bool holomorphic = false;
  CuspOrderTable cusp_orders;

  bool conditions_hold() const {
    return integral_weight && condition_24_delta && condition_24_N_over_delta;
  }
};

ModularityVerdict modularity_check(const EtaQuotient& eq);

/// Kronecker symbol (a / n) for arbitrary integers.
int kronecker_symbol(std::int64_t a, std::int64_t n);

/// chi(d) = ((-1)^l s / d).
int character_value(const EtaQuotient& eq, std::int64_t d);

/// Order of vanishing at the cusps c/d, d | N.
Rational cusp_order(const EtaQuotient& eq, std::int64_t d);
CuspOrderTable cusp_orders(const EtaQuotient& eq);

/// scalar * q^{(sum delta r_delta)/24} * prod f_delta^{r_delta}.
series::TruncSeries q_expansion(const EtaQuotient& eq, std::size_t order,
                                series::Domain domain = series::Domain::exact());

std::int64_t sturm_bound(std::int64_t weight, std::int64_t level, bool same_character);

/// sum c(dn) q^n.
series::TruncSeries u_operator(const series::TruncSeries& a, std::int64_t d);
/// U(d) applied `times` times.
series::TruncSeries u_operator_power(const series::TruncSeries& a, std::int64_t d, int times);

struct CongruenceResult {
  bool holds = true;
  std::size_t bound = 0;
  std::optional<std::size_t> first_failure;
  BigInt lhs_residue;
  BigInt rhs_residue;
};

/// Compares coefficients 0..bound modulo `modulus`. Residue inputs must have a
/// modulus divisible by `modulus`.
CongruenceResult congruent_upto(const series::TruncSeries& a, const series::TruncSeries& b,
                                const BigInt& modulus, std::size_t bound);

// Level 18 and 36 quotients used for the 3-adic generating-function checks:
//   A_{k,1} = 36 eta(z)^{3^{k+3}-13} eta(2z)^8 / eta(3z)^{3^{k+2}-7}
//   B_{k,1} = 2^{k+2} 3^{k+2} * (same eta part)
//   A_{k,2} = 6 eta(z)^{3^{k+2}-6} eta(2z)^3 eta(6z)^3 / eta(3z)^{3^{k+1}-2}
//   B_{k,2} = 2^{beta_k} 3^{k+1} * (same eta part), beta_k = 2k+1 (k even), 0 (k odd)
EtaQuotient a_k1(int k);
EtaQuotient b_k1(int k);
EtaQuotient a_k2(int k);
EtaQuotient b_k2(int k);
int beta_k(int k);

}  // namespace pdot::modforms
