#include "pdot/series.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace pdot::series {

namespace {

using Residues = std::vector<std::uint64_t>;
using Integers = std::vector<BigInt>;

std::uint64_t reduce_big(const BigInt& v, std::uint64_t m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

void require_same_domain(const TruncSeries& a, const TruncSeries& b, const char* op) {
  if (!(a.domain() == b.domain()))
    throw DomainMismatch(std::string(op) + ": domain mismatch (" + a.domain().to_string() +
                         " vs " + b.domain().to_string() + ")");
}

template <typename Vec>
std::vector<std::size_t> nonzero_indices(const Vec& v, std::size_t limit) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < std::min(limit, v.size()); ++i)
    if (v[i] != 0) out.push_back(i);
  return out;
}

// Number of (M-1)^2-sized terms that can be added to a value below M without
// overflowing 64 bits; 0 means products themselves may overflow.
std::uint64_t lazy_budget(std::uint64_t m) {
  if (m > (std::uint64_t{1} << 32)) return 0;
  const std::uint64_t top = (m - 1) * (m - 1);
  if (top == 0) return std::numeric_limits<std::uint64_t>::max();
  return (std::numeric_limits<std::uint64_t>::max() - m) / top;
}

Residues mul_residues(const Residues& a, const Residues& b, std::size_t order, std::uint64_t m) {
  auto nz_a = nonzero_indices(a, order);
  auto nz_b = nonzero_indices(b, order);
  const Residues* outer = &a;
  const Residues* inner = &b;
  if (nz_b.size() < nz_a.size()) {
    std::swap(outer, inner);
    std::swap(nz_a, nz_b);
  }
  const auto& nz_outer = nz_a;
  const auto& nz_inner = nz_b;
  const bool inner_sparse = nz_inner.size() * 4 < order;

  Residues acc(order, 0);
  const std::uint64_t budget = lazy_budget(m);
  if (budget == 0) {
    for (std::size_t i : nz_outer) {
      const std::uint64_t x = (*outer)[i];
      for (std::size_t j : nz_inner) {
        if (i + j >= order) break;
        acc[i + j] = (acc[i + j] + mulmod(x, (*inner)[j], m)) % m;
      }
    }
    return acc;
  }

  std::uint64_t pending = 0;
  for (std::size_t i : nz_outer) {
    const std::uint64_t x = (*outer)[i];
    if (inner_sparse) {
      for (std::size_t j : nz_inner) {
        if (i + j >= order) break;
        acc[i + j] += x * (*inner)[j];
      }
    } else {
      const std::size_t limit = order - i;
      const std::uint64_t* src = inner->data();
      std::uint64_t* dst = acc.data() + i;
      for (std::size_t j = 0; j < limit; ++j) dst[j] += x * src[j];
    }
    if (++pending >= budget) {
      for (auto& v : acc) v %= m;
      pending = 0;
    }
  }
  for (auto& v : acc) v %= m;
  return acc;
}

Integers mul_integers(const Integers& a, const Integers& b, std::size_t order) {
  auto nz_a = nonzero_indices(a, order);
  auto nz_b = nonzero_indices(b, order);
  const Integers* outer = &a;
  const Integers* inner = &b;
  if (nz_b.size() < nz_a.size()) {
    std::swap(outer, inner);
    std::swap(nz_a, nz_b);
  }
  Integers acc(order);
  for (std::size_t i : nz_a) {
    const BigInt& x = (*outer)[i];
    for (std::size_t j : nz_b) {
      if (i + j >= order) break;
      acc[i + j] += x * (*inner)[j];
    }
  }
  return acc;
}

// c = num / den with den[0] a unit; den_inv is its inverse.
Residues divide_residues(const Residues& num, const Residues& den, std::size_t order,
                         std::uint64_t m, std::uint64_t den_inv) {
  std::vector<std::size_t> nz;
  for (std::size_t k = 1; k < std::min(order, den.size()); ++k)
    if (den[k] != 0) nz.push_back(k);
  const std::uint64_t budget = lazy_budget(m);
  Residues c(order, 0);
  for (std::size_t n = 0; n < order; ++n) {
    std::uint64_t s = 0;
    if (budget == 0) {
      for (std::size_t k : nz) {
        if (k > n) break;
        s = (s + mulmod(den[k], c[n - k], m)) % m;
      }
    } else {
      std::uint64_t pending = 0;
      for (std::size_t k : nz) {
        if (k > n) break;
        s += den[k] * c[n - k];
        if (++pending >= budget) {
          s %= m;
          pending = 0;
        }
      }
      s %= m;
    }
    const std::uint64_t rhs = (num[n] % m + m - s) % m;
    c[n] = mulmod(rhs, den_inv, m);
  }
  return c;
}

Integers divide_integers(const Integers& num, const Integers& den, std::size_t order) {
  const bool negate = den[0] < 0;
  std::vector<std::size_t> nz;
  for (std::size_t k = 1; k < std::min(order, den.size()); ++k)
    if (den[k] != 0) nz.push_back(k);
  Integers c(order);
  for (std::size_t n = 0; n < order; ++n) {
    BigInt s = num[n];
    for (std::size_t k : nz) {
      if (k > n) break;
      s -= den[k] * c[n - k];
    }
    c[n] = negate ? BigInt(-s) : s;
  }
  return c;
}

void require_unit(const TruncSeries& a, const char* op) {
  if (a.order() == 0) return;
  if (a.domain().is_exact()) {
    const BigInt& c0 = a.integers()[0];
    if (c0 != 1 && c0 != -1)
      throw NonUnitError(std::string(op) + ": constant term " + c0.str() + " is not +-1");
  } else {
    const std::uint64_t m = a.domain().modulus();
    if (mod_inverse(a.residues()[0], m) == 0)
      throw NonUnitError(std::string(op) + ": constant term " + std::to_string(a.residues()[0]) +
                         " is not invertible mod " + std::to_string(m));
  }
}

// Powers of f_m are built either by repeated sparse multiplication or by
// square-and-multiply; pick whichever needs fewer coefficient operations.
bool prefer_repeated(std::size_t nnz, std::uint64_t abs_e, std::size_t order) {
  const double repeated = static_cast<double>(abs_e) * static_cast<double>(order) *
                          static_cast<double>(std::max<std::size_t>(nnz, 1));
  const double steps = std::bit_width(abs_e) + std::popcount(abs_e);
  const double squaring = steps * static_cast<double>(order) * static_cast<double>(order) / 2.0;
  return repeated <= squaring;
}

// acc * base^e.
TruncSeries apply_power(TruncSeries acc, const TruncSeries& base, std::int64_t e) {
  if (e == 0) return acc;
  const std::uint64_t abs_e = e < 0 ? -static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(e);
  if (prefer_repeated(base.nonzero_count(), abs_e, acc.order())) {
    for (std::uint64_t i = 0; i < abs_e; ++i)
      acc = e > 0 ? ring_mul(acc, base) : divide(acc, base);
    return acc;
  }
  return ring_mul(acc, pow(base, e));
}

}  // namespace

Domain Domain::residue(std::uint64_t modulus) {
  if (modulus < 2) throw std::invalid_argument("residue ring modulus must be >= 2");
  return Domain(modulus);
}

std::string Domain::to_string() const {
  return is_exact() ? std::string("ZZ") : "ZZ/" + std::to_string(modulus_);
}

TruncSeries::TruncSeries(std::size_t order, Domain domain) : domain_(domain) {
  if (domain.is_exact())
    coeffs_ = Integers(order);
  else
    coeffs_ = Residues(order, 0);
}

TruncSeries TruncSeries::one(std::size_t order, Domain domain) {
  TruncSeries s(order, domain);
  if (order > 0) s.set_coeff(0, 1);
  return s;
}

TruncSeries TruncSeries::from_coeffs(std::vector<BigInt> coeffs, Domain domain) {
  TruncSeries s(0, domain);
  if (domain.is_exact()) {
    s.coeffs_ = std::move(coeffs);
  } else {
    Residues r(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) r[i] = reduce_big(coeffs[i], domain.modulus());
    s.coeffs_ = std::move(r);
  }
  return s;
}

TruncSeries TruncSeries::from_coeffs(std::initializer_list<long long> coeffs, Domain domain) {
  std::vector<BigInt> v(coeffs.begin(), coeffs.end());
  return from_coeffs(std::move(v), domain);
}

std::size_t TruncSeries::order() const {
  return std::visit([](const auto& v) { return v.size(); }, coeffs_);
}

BigInt TruncSeries::coeff(std::size_t n) const {
  if (n >= order())
    throw std::out_of_range("coefficient " + std::to_string(n) + " beyond order " +
                            std::to_string(order()));
  if (domain_.is_exact()) return std::get<Integers>(coeffs_)[n];
  return BigInt(std::get<Residues>(coeffs_)[n]);
}

void TruncSeries::set_coeff(std::size_t n, const BigInt& value) {
  if (n >= order()) throw std::out_of_range("set_coeff beyond order");
  if (domain_.is_exact())
    std::get<Integers>(coeffs_)[n] = value;
  else
    std::get<Residues>(coeffs_)[n] = reduce_big(value, domain_.modulus());
}

std::size_t TruncSeries::valuation() const {
  return std::visit(
      [](const auto& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
          if (v[i] != 0) return i;
        return v.size();
      },
      coeffs_);
}

std::size_t TruncSeries::nonzero_count() const {
  return std::visit(
      [](const auto& v) {
        return static_cast<std::size_t>(
            std::count_if(v.begin(), v.end(), [](const auto& x) { return x != 0; }));
      },
      coeffs_);
}

std::span<const BigInt> TruncSeries::integers() const {
  if (!domain_.is_exact()) throw DomainMismatch("integers() on a residue series");
  return std::get<Integers>(coeffs_);
}

std::span<const std::uint64_t> TruncSeries::residues() const {
  if (domain_.is_exact()) throw DomainMismatch("residues() on an exact series");
  return std::get<Residues>(coeffs_);
}

std::vector<BigInt>& TruncSeries::mutable_integers() {
  if (!domain_.is_exact()) throw DomainMismatch("mutable_integers() on a residue series");
  return std::get<Integers>(coeffs_);
}

std::vector<std::uint64_t>& TruncSeries::mutable_residues() {
  if (domain_.is_exact()) throw DomainMismatch("mutable_residues() on an exact series");
  return std::get<Residues>(coeffs_);
}

bool TruncSeries::operator==(const TruncSeries& other) const {
  return domain_ == other.domain_ && coeffs_ == other.coeffs_;
}

TruncSeries ring_add(const TruncSeries& a, const TruncSeries& b) {
  require_same_domain(a, b, "ring_add");
  const std::size_t order = std::min(a.order(), b.order());
  TruncSeries out(order, a.domain());
  if (a.domain().is_exact()) {
    auto& dst = out.mutable_integers();
    for (std::size_t i = 0; i < order; ++i) dst[i] = a.integers()[i] + b.integers()[i];
  } else {
    const std::uint64_t m = a.domain().modulus();
    auto& dst = out.mutable_residues();
    for (std::size_t i = 0; i < order; ++i) {
      const std::uint64_t s = a.residues()[i] + b.residues()[i];
      dst[i] = s >= m || s < a.residues()[i] ? s - m : s;
    }
  }
  return out;
}

TruncSeries ring_neg(const TruncSeries& a) {
  TruncSeries out(a.order(), a.domain());
  if (a.domain().is_exact()) {
    auto& dst = out.mutable_integers();
    for (std::size_t i = 0; i < a.order(); ++i) dst[i] = -a.integers()[i];
  } else {
    const std::uint64_t m = a.domain().modulus();
    auto& dst = out.mutable_residues();
    for (std::size_t i = 0; i < a.order(); ++i) dst[i] = a.residues()[i] == 0 ? 0 : m - a.residues()[i];
  }
  return out;
}

TruncSeries ring_sub(const TruncSeries& a, const TruncSeries& b) {
  require_same_domain(a, b, "ring_sub");
  return ring_add(a, ring_neg(b));
}

TruncSeries ring_mul(const TruncSeries& a, const TruncSeries& b) {
  require_same_domain(a, b, "ring_mul");
  const std::size_t order = std::min(a.order(), b.order());
  if (a.domain().is_exact()) {
    Integers lhs(a.integers().begin(), a.integers().begin() + order);
    Integers rhs(b.integers().begin(), b.integers().begin() + order);
    return TruncSeries::from_coeffs(mul_integers(lhs, rhs, order), a.domain());
  }
  Residues lhs(a.residues().begin(), a.residues().begin() + order);
  Residues rhs(b.residues().begin(), b.residues().begin() + order);
  TruncSeries out(0, a.domain());
  out.mutable_residues() = mul_residues(lhs, rhs, order, a.domain().modulus());
  return out;
}

TruncSeries scale(const TruncSeries& a, const BigInt& factor) {
  TruncSeries out(a.order(), a.domain());
  if (a.domain().is_exact()) {
    auto& dst = out.mutable_integers();
    for (std::size_t i = 0; i < a.order(); ++i) dst[i] = a.integers()[i] * factor;
  } else {
    const std::uint64_t m = a.domain().modulus();
    const std::uint64_t f = reduce_big(factor, m);
    auto& dst = out.mutable_residues();
    for (std::size_t i = 0; i < a.order(); ++i) dst[i] = mulmod(a.residues()[i], f, m);
  }
  return out;
}

TruncSeries divide(const TruncSeries& num, const TruncSeries& den) {
  require_same_domain(num, den, "divide");
  require_unit(den, "divide");
  const std::size_t order = std::min(num.order(), den.order());
  TruncSeries out(0, num.domain());
  if (order == 0) return TruncSeries(0, num.domain());
  if (num.domain().is_exact()) {
    Integers n(num.integers().begin(), num.integers().begin() + order);
    Integers d(den.integers().begin(), den.integers().begin() + order);
    return TruncSeries::from_coeffs(divide_integers(n, d, order));
  }
  const std::uint64_t m = num.domain().modulus();
  Residues n(num.residues().begin(), num.residues().begin() + order);
  Residues d(den.residues().begin(), den.residues().begin() + order);
  out.mutable_residues() = divide_residues(n, d, order, m, mod_inverse(d[0], m));
  return out;
}

TruncSeries invert(const TruncSeries& a) {
  require_unit(a, "invert");
  return divide(TruncSeries::one(a.order(), a.domain()), a);
}

TruncSeries pow(const TruncSeries& a, std::int64_t e) {
  if (e < 0) {
    require_unit(a, "pow");
    return invert(pow(a, -e));
  }
  TruncSeries result = TruncSeries::one(a.order(), a.domain());
  TruncSeries base = a;
  auto bits = static_cast<std::uint64_t>(e);
  while (bits != 0) {
    if (bits & 1) result = ring_mul(result, base);
    bits >>= 1;
    if (bits != 0) base = ring_mul(base, base);
  }
  return result;
}

TruncSeries euler_product(std::int64_t m, std::size_t order, Domain domain) {
  if (m < 1) throw std::invalid_argument("euler_product: m must be >= 1");
  TruncSeries out(order, domain);
  const auto limit = static_cast<std::int64_t>(order);
  // f_1 = sum_k (-1)^k q^{k(3k-1)/2}, k over all integers.
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t lower = m * (k * (3 * k - 1) / 2);
    const std::int64_t upper = m * (k * (3 * k + 1) / 2);
    if (lower >= limit) break;
    const int sign = k % 2 == 0 ? 1 : -1;
    out.set_coeff(static_cast<std::size_t>(lower), sign);
    if (k > 0 && upper < limit) out.set_coeff(static_cast<std::size_t>(upper), sign);
  }
  return out;
}

TruncSeries euler_factor(std::int64_t m, std::int64_t e, std::size_t order, Domain domain) {
  const TruncSeries base = euler_product(m, order, domain);
  return apply_power(TruncSeries::one(order, domain), base, e);
}

TruncSeries euler_quotient(std::span<const EulerTerm> terms, std::size_t order, Domain domain) {
  TruncSeries acc = TruncSeries::one(order, domain);
  // Positive powers first keeps exact intermediate coefficients smaller.
  std::vector<EulerTerm> sorted(terms.begin(), terms.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const EulerTerm& x, const EulerTerm& y) { return (x.e > 0) > (y.e > 0); });
  for (const auto& term : sorted) acc = apply_power(std::move(acc), euler_product(term.m, order, domain), term.e);
  return acc;
}

TruncSeries euler_quotient(std::initializer_list<EulerTerm> terms, std::size_t order, Domain domain) {
  return euler_quotient(std::span<const EulerTerm>(terms.begin(), terms.size()), order, domain);
}

TruncSeries inflate(const TruncSeries& a, std::int64_t m, std::size_t max_order) {
  if (m < 1) throw std::invalid_argument("inflate: m must be >= 1");
  const auto step = static_cast<std::size_t>(m);
  const std::size_t order = std::min(a.order() * step, max_order);
  TruncSeries out(order, a.domain());
  for (std::size_t i = 0; i * step < order; ++i) {
    if (a.domain().is_exact())
      out.mutable_integers()[i * step] = a.integers()[i];
    else
      out.mutable_residues()[i * step] = a.residues()[i];
  }
  return out;
}

TruncSeries dissect(const TruncSeries& a, std::int64_t m, std::int64_t t) {
  if (m < 1) throw std::invalid_argument("dissect: m must be >= 1");
  if (t < 0 || t >= m)
    throw std::invalid_argument("dissect: residue " + std::to_string(t) + " outside [0, " +
                                std::to_string(m) + ")");
  const auto step = static_cast<std::size_t>(m);
  const auto start = static_cast<std::size_t>(t);
  const std::size_t order = a.order() > start ? (a.order() - start + step - 1) / step : 0;
  TruncSeries out(order, a.domain());
  for (std::size_t n = 0; n < order; ++n) {
    if (a.domain().is_exact())
      out.mutable_integers()[n] = a.integers()[step * n + start];
    else
      out.mutable_residues()[n] = a.residues()[step * n + start];
  }
  return out;
}

TruncSeries shift(const TruncSeries& a, std::size_t k) {
  TruncSeries out(a.order() + k, a.domain());
  for (std::size_t i = 0; i < a.order(); ++i) {
    if (a.domain().is_exact())
      out.mutable_integers()[i + k] = a.integers()[i];
    else
      out.mutable_residues()[i + k] = a.residues()[i];
  }
  return out;
}

TruncSeries unshift(const TruncSeries& a, std::size_t k) {
  if (a.valuation() < std::min(k, a.order()))
    throw std::invalid_argument("unshift: series has a nonzero coefficient below q^" + std::to_string(k));
  const std::size_t order = a.order() > k ? a.order() - k : 0;
  TruncSeries out(order, a.domain());
  for (std::size_t i = 0; i < order; ++i) {
    if (a.domain().is_exact())
      out.mutable_integers()[i] = a.integers()[i + k];
    else
      out.mutable_residues()[i] = a.residues()[i + k];
  }
  return out;
}

TruncSeries truncate(const TruncSeries& a, std::size_t order) {
  if (order > a.order())
    throw std::invalid_argument("truncate: cannot extend order " + std::to_string(a.order()) +
                                " to " + std::to_string(order));
  if (a.domain().is_exact())
    return TruncSeries::from_coeffs(Integers(a.integers().begin(), a.integers().begin() + order));
  TruncSeries out(0, a.domain());
  out.mutable_residues() = Residues(a.residues().begin(), a.residues().begin() + order);
  return out;
}

TruncSeries reduce_mod(const TruncSeries& a, std::uint64_t modulus) {
  if (modulus < 2) throw std::invalid_argument("reduce_mod: modulus must be >= 2");
  if (!a.domain().is_exact()) throw DomainMismatch("reduce_mod: input must be an exact series");
  TruncSeries out(a.order(), Domain::residue(modulus));
  auto& dst = out.mutable_residues();
  for (std::size_t i = 0; i < a.order(); ++i) dst[i] = reduce_big(a.integers()[i], modulus);
  return out;
}

TruncSeries change_modulus(const TruncSeries& a, std::uint64_t modulus) {
  if (a.domain().is_exact()) return reduce_mod(a, modulus);
  if (modulus < 2) throw std::invalid_argument("change_modulus: modulus must be >= 2");
  if (a.domain().modulus() % modulus != 0)
    throw DomainMismatch("change_modulus: " + std::to_string(modulus) + " does not divide " +
                         std::to_string(a.domain().modulus()));
  TruncSeries out(a.order(), Domain::residue(modulus));
  auto& dst = out.mutable_residues();
  for (std::size_t i = 0; i < a.order(); ++i) dst[i] = a.residues()[i] % modulus;
  return out;
}

TruncSeries jacobi_cube(std::size_t order, Domain domain) {
  TruncSeries out(order, domain);
  for (std::int64_t n = 0;; ++n) {
    const auto index = static_cast<std::size_t>(n * (n + 1) / 2);
    if (index >= order) break;
    out.set_coeff(index, (n % 2 == 0 ? 1 : -1) * (2 * n + 1));
  }
  return out;
}

TruncSeries cubic_theta(std::size_t order, Domain domain) {
  const auto limit = static_cast<std::int64_t>(order);
  const auto bound = static_cast<std::int64_t>(std::ceil(std::sqrt(2.0 * static_cast<double>(order))));
  std::vector<BigInt> counts(order);
  for (std::int64_t m = -bound; m <= bound; ++m)
    for (std::int64_t n = -bound; n <= bound; ++n) {
      const std::int64_t v = m * m + m * n + n * n;
      if (v < limit) counts[static_cast<std::size_t>(v)] += 1;
    }
  return TruncSeries::from_coeffs(std::move(counts), domain);
}

std::string to_text(const TruncSeries& a) {
  std::ostringstream out;
  for (std::size_t n = 0; n < a.order(); ++n) out << n << '\t' << a.coeff(n) << '\n';
  return out.str();
}

}  // namespace pdot::series
