#pragma once

// Radu's criterion for congruences c_r(mn + t) == 0 (mod u), where
//   sum c_r(n) q^n = prod_{delta | M} f_delta^{r_delta}.
//
// A finite check of c_r(mn + t') for t' in P_{m,r}(t) and n <= floor(nu)
// certifies the congruence for every n, provided (m, M, N, r, t) lies in
// Delta* and the orders p_{m,r}(gamma) + p*_{r'}(gamma) are nonnegative on
// the double-coset representatives gamma_delta = [[1, 0], [delta, 1]].

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "pdot/numeric.hpp"
#include "pdot/series.hpp"

namespace pdot::radu {

struct RaduInstance {
  std::int64_t m = 1;
  std::int64_t M = 1;
  std::int64_t N = 1;
  /// r_delta over the divisors of M, ascending.
  std::vector<std::int64_t> r;
  std::int64_t t = 0;

  /// Throws std::invalid_argument on shape errors (t outside [0, m), wrong
  /// length of r, nonpositive m/M/N).
  void validate() const;
  std::vector<std::int64_t> divisors_of_M() const;
  /// k = gcd(m^2 - 1, 24).
  std::int64_t k() const;
  /// prod delta^{|r_delta|} = 2^s * j with j odd.
  std::int64_t s_pow2() const;
  BigInt j_odd() const;
  std::int64_t sum_r() const;
  /// sum delta r_delta.
  std::int64_t sum_delta_r() const;

  bool operator==(const RaduInstance&) const = default;
};

struct AuxExponents {
  /// r'_delta over the divisors of N, ascending.
  std::vector<std::int64_t> r_prime;

  bool operator==(const AuxExponents&) const = default;
};

/// Verdicts for the six defining conditions of Delta*.
struct DeltaStarVerdict {
  std::array<bool, 6> conditions{};
  bool member() const;
  std::vector<int> failed() const;  // 1-based condition numbers

  bool operator==(const DeltaStarVerdict&) const = default;
};

struct MinimumWitness {
  Rational value;
  std::int64_t lambda;
};

struct NonnegCheck {
  std::int64_t delta;
  Rational p_mr;
  std::int64_t lambda;  // attains p_mr
  Rational p_star;
  Rational sum() const { return p_mr + p_star; }

  bool operator==(const NonnegCheck&) const = default;
};

struct NuBound {
  Rational nu;
  BigInt floor;

  bool operator==(const NuBound&) const = default;
};

struct CoefficientFailure {
  std::int64_t t_prime;
  std::int64_t n;
  std::uint64_t residue;

  bool operator==(const CoefficientFailure&) const = default;
};

struct Certificate {
  RaduInstance instance;
  AuxExponents aux;
  std::uint64_t u = 1;
  DeltaStarVerdict delta_star;
  std::vector<std::int64_t> p_set;
  std::vector<NonnegCheck> nonneg_checks;
  NuBound nu;
  std::vector<std::pair<std::int64_t, std::int64_t>> verified_range;  // (t', n)
  std::optional<CoefficientFailure> first_failure;
  bool verdict = false;

  bool operator==(const Certificate&) const = default;
};

/// Thrown when the criterion cannot be applied to an instance. This does not
/// mean the congruence is false. partial() holds everything computed before
/// the failing step.
class RaduInapplicable : public std::runtime_error {
 public:
  enum class Kind { level_not_squarefree, not_in_delta_star, negative_order };
  RaduInapplicable(Kind kind, const std::string& what, Certificate partial)
      : std::runtime_error(what), kind_(kind), partial_(std::move(partial)) {}
  Kind kind() const { return kind_; }
  const Certificate& partial() const { return partial_; }

 private:
  Kind kind_;
  Certificate partial_;
};

/// {x^2 mod n : gcd(x, n) = 1}, sorted.
std::vector<std::int64_t> squares_mod(std::int64_t modulus);

std::vector<std::int64_t> p_set(const RaduInstance& inst);

DeltaStarVerdict delta_star_check(const RaduInstance& inst);

/// p_{m,r}(gamma_delta), minimised over lambda in [0, m).
MinimumWitness p_mr(const RaduInstance& inst, std::int64_t delta);

/// Same minimum taken over lambda in [0, lambda_range); used to confirm that
/// extending the range past m changes nothing.
MinimumWitness p_mr_scan(const RaduInstance& inst, std::int64_t delta, std::int64_t lambda_range);

Rational p_star(const AuxExponents& aux, std::int64_t N, std::int64_t delta);

/// [SL_2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p).
BigInt gamma0_index(std::int64_t N);

NuBound nu_bound(const RaduInstance& inst, const AuxExponents& aux);

/// sum c_r(n) q^n to the given order in Z/uZ.
series::TruncSeries c_r_series(const RaduInstance& inst, std::size_t order, std::uint64_t u);

/// Runs the whole criterion. Throws RaduInapplicable when N and N/2 are both
/// non-squarefree, the tuple is outside Delta*, or some order is negative.
/// A certificate with verdict == false means a coefficient check failed.
Certificate radu_verify(const RaduInstance& inst, const AuxExponents& aux, std::uint64_t u);

nlohmann::json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

}  // namespace pdot::radu
