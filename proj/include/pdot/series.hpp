#pragma once

// Truncated formal power series in q over Z or Z/MZ.
//
// A TruncSeries of order T knows the coefficients c_0 .. c_{T-1}; nothing is
// assumed about higher powers. Binary operations on operands of different
// order return the smaller order, so a result never claims more than both
// inputs determine.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pdot/numeric.hpp"

namespace pdot::series {

/// Coefficient ring: exact integers (modulus 0) or residues modulo M >= 2.
class Domain {
 public:
  static Domain exact() { return Domain(0); }
  static Domain residue(std::uint64_t modulus);

  bool is_exact() const { return modulus_ == 0; }
  std::uint64_t modulus() const { return modulus_; }
  std::string to_string() const;

  bool operator==(const Domain&) const = default;

 private:
  explicit Domain(std::uint64_t m) : modulus_(m) {}
  std::uint64_t modulus_;
};

class DomainMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an inverse is requested for a series whose constant term is
/// not a unit of the coefficient ring.
class NonUnitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class TruncSeries {
 public:
  /// Zero series of the given order.
  TruncSeries(std::size_t order, Domain domain);

  static TruncSeries one(std::size_t order, Domain domain = Domain::exact());
  static TruncSeries from_coeffs(std::vector<BigInt> coeffs, Domain domain = Domain::exact());
  static TruncSeries from_coeffs(std::initializer_list<long long> coeffs,
                                 Domain domain = Domain::exact());

  std::size_t order() const;
  const Domain& domain() const { return domain_; }

  /// Coefficient of q^n; in a residue ring the representative in [0, M).
  BigInt coeff(std::size_t n) const;
  void set_coeff(std::size_t n, const BigInt& value);

  /// Index of the first nonzero coefficient, or order() for the zero series.
  std::size_t valuation() const;
  std::size_t nonzero_count() const;

  /// Direct views of the storage. Each throws if the domain does not match.
  std::span<const BigInt> integers() const;
  std::span<const std::uint64_t> residues() const;
  std::vector<BigInt>& mutable_integers();
  std::vector<std::uint64_t>& mutable_residues();

  bool operator==(const TruncSeries& other) const;

 private:
  Domain domain_;
  std::variant<std::vector<BigInt>, std::vector<std::uint64_t>> coeffs_;
};

// Ring operations. Binary operations throw DomainMismatch on differing
// domains and truncate to the smaller order.
TruncSeries ring_add(const TruncSeries& a, const TruncSeries& b);
TruncSeries ring_sub(const TruncSeries& a, const TruncSeries& b);
TruncSeries ring_neg(const TruncSeries& a);
TruncSeries ring_mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries scale(const TruncSeries& a, const BigInt& factor);

/// b with a * b = 1 + O(q^T). Throws NonUnitError unless the constant term is
/// +-1 (exact) or invertible modulo M.
TruncSeries invert(const TruncSeries& a);

/// num / den, computed by the division recurrence (no explicit inverse).
TruncSeries divide(const TruncSeries& num, const TruncSeries& den);

/// Square-and-multiply power; negative exponents go through invert.
TruncSeries pow(const TruncSeries& a, std::int64_t e);

/// Pentagonal-number expansion of f_m = prod_{j>=1} (1 - q^{jm}).
TruncSeries euler_product(std::int64_t m, std::size_t order, Domain domain = Domain::exact());

/// f_m^e to the given order.
TruncSeries euler_factor(std::int64_t m, std::int64_t e, std::size_t order,
                         Domain domain = Domain::exact());

struct EulerTerm {
  std::int64_t m;
  std::int64_t e;
};

/// prod f_m^e over the listed terms.
TruncSeries euler_quotient(std::span<const EulerTerm> terms, std::size_t order,
                           Domain domain = Domain::exact());
TruncSeries euler_quotient(std::initializer_list<EulerTerm> terms, std::size_t order,
                           Domain domain = Domain::exact());

/// a(q^m). The result has order m * order(a), capped at max_order when given.
TruncSeries inflate(const TruncSeries& a, std::int64_t m, std::size_t max_order = SIZE_MAX);

/// sum_n c(m n + t) q^n, order ceil((order(a) - t) / m). Requires 0 <= t < m.
TruncSeries dissect(const TruncSeries& a, std::int64_t m, std::int64_t t);

/// q^k * a; the order grows by k.
TruncSeries shift(const TruncSeries& a, std::size_t k);

/// a / q^k; requires the first k coefficients to vanish.
TruncSeries unshift(const TruncSeries& a, std::size_t k);

/// Truncate to a smaller order.
TruncSeries truncate(const TruncSeries& a, std::size_t order);

/// Exact series reduced into Z/MZ. Throws for M < 2 or a non-exact input.
TruncSeries reduce_mod(const TruncSeries& a, std::uint64_t modulus);

/// Residue series moved to Z/M'Z for a divisor M' of its modulus. Exact input
/// is accepted and reduced directly.
TruncSeries change_modulus(const TruncSeries& a, std::uint64_t modulus);

/// sum_{n>=0} (-1)^n (2n+1) q^{n(n+1)/2}.
TruncSeries jacobi_cube(std::size_t order, Domain domain = Domain::exact());

/// Number of (m, n) in Z^2 with m^2 + mn + n^2 = index.
TruncSeries cubic_theta(std::size_t order, Domain domain = Domain::exact());

/// One "n<TAB>c(n)" line per coefficient.
std::string to_text(const TruncSeries& a);

}  // namespace pdot::series
