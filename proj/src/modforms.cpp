#include "pdot/modforms.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace pdot::modforms {

using series::Domain;
using series::TruncSeries;

namespace {

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

std::int64_t parse_int(std::string_view text, const char* what) {
  if (text.empty()) throw std::invalid_argument(std::string("eta-quotient: empty ") + what);
  std::size_t used = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(std::string(text), &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("eta-quotient: bad ") + what + " '" + std::string(text) + "'");
  }
  if (used != text.size())
    throw std::invalid_argument(std::string("eta-quotient: bad ") + what + " '" + std::string(text) + "'");
  return value;
}

}  // namespace

void EtaQuotient::validate() const {
  if (level < 1) throw std::invalid_argument("eta-quotient: level must be positive");
  for (const auto& [delta, r] : exponents) {
    if (delta < 1 || level % delta != 0)
      throw std::invalid_argument("eta-quotient: " + std::to_string(delta) + " does not divide level " +
                                  std::to_string(level));
  }
}

std::int64_t EtaQuotient::exponent_sum() const {
  std::int64_t s = 0;
  for (const auto& [delta, r] : exponents) s += r;
  return s;
}

std::int64_t EtaQuotient::delta_weighted_sum() const {
  std::int64_t s = 0;
  for (const auto& [delta, r] : exponents) s += delta * r;
  return s;
}

std::int64_t EtaQuotient::level_weighted_sum() const {
  std::int64_t s = 0;
  for (const auto& [delta, r] : exponents) s += (level / delta) * r;
  return s;
}

EtaQuotient parse_eta(std::string_view text) {
  const auto first = text.find(';');
  const auto second = first == std::string_view::npos ? first : text.find(';', first + 1);
  if (second == std::string_view::npos || text.find(';', second + 1) != std::string_view::npos)
    throw std::invalid_argument("eta-quotient: expected 'N;scalar;d1:r1,...', got '" + std::string(text) + "'");

  EtaQuotient eq;
  eq.level = parse_int(text.substr(0, first), "level");
  const std::string scalar(text.substr(first + 1, second - first - 1));
  try {
    eq.scalar = BigInt(scalar);
  } catch (const std::exception&) {
    throw std::invalid_argument("eta-quotient: bad scalar '" + scalar + "'");
  }

  std::string_view rest = text.substr(second + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("eta-quotient: expected 'delta:r', got '" + std::string(item) + "'");
    const std::int64_t delta = parse_int(item.substr(0, colon), "divisor");
    const std::int64_t r = parse_int(item.substr(colon + 1), "exponent");
    if (!eq.exponents.emplace(delta, r).second)
      throw std::invalid_argument("eta-quotient: divisor " + std::to_string(delta) + " listed twice");
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
    if (rest.empty()) throw std::invalid_argument("eta-quotient: trailing comma");
  }
  eq.validate();
  return eq;
}

std::string format_eta(const EtaQuotient& eq) {
  std::ostringstream out;
  out << eq.level << ';' << eq.scalar << ';';
  bool first = true;
  for (const auto& [delta, r] : eq.exponents) {
    if (r == 0) continue;
    if (!first) out << ',';
    out << delta << ':' << r;
    first = false;
  }
  return out.str();
}

std::int64_t weight(const EtaQuotient& eq) {
  const std::int64_t sum = eq.exponent_sum();
  if (sum % 2 != 0)
    throw std::domain_error("eta-quotient has half-integral weight " + std::to_string(sum) + "/2");
  return sum / 2;
}

Rational FactoredRational::value() const {
  Rational v = sign;
  for (const auto& [p, e] : prime_exponents) {
    const BigInt pe = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(std::llabs(e)));
    v = e >= 0 ? Rational(v * pe) : Rational(v / pe);
  }
  return v;
}

FactoredRational character_base(const EtaQuotient& eq) {
  FactoredRational s;
  for (const auto& [delta, r] : eq.exponents)
    for (const auto& [p, e] : factorize(delta)) s.prime_exponents[p] += static_cast<std::int64_t>(e) * r;
  std::erase_if(s.prime_exponents, [](const auto& kv) { return kv.second == 0; });
  return s;
}

int kronecker_symbol(std::int64_t a, std::int64_t n) {
  static constexpr int tab[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int v = 0;
  while (n % 2 == 0) {
    ++v;
    n /= 2;
  }
  int k = (v % 2 == 0) ? 1 : tab[a & 7];
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  // n is now odd and positive; Jacobi reciprocity loop.
  while (true) {
    if (a == 0) return n > 1 ? 0 : k;
    v = 0;
    while (a % 2 == 0) {
      ++v;
      a /= 2;
    }
    if (v % 2 != 0) k *= tab[n & 7];
    if (a & n & 2) k = -k;
    const std::int64_t r = a < 0 ? -a : a;
    a = n % r;
    n = r;
  }
}

int character_value(const EtaQuotient& eq, std::int64_t d) {
  const std::int64_t ell = weight(eq);
  const FactoredRational s = character_base(eq);
  int value = kronecker_symbol(ell % 2 == 0 ? s.sign : -s.sign, d);
  // (p^{-1} / d) = (p / d) whenever the symbol is nonzero, so only the
  // parity of each exponent matters once p does not divide d.
  for (const auto& [p, e] : s.prime_exponents) {
    const int symbol = kronecker_symbol(p, d);
    if (symbol == 0) return 0;
    if (e % 2 != 0) value *= symbol;
  }
  return value;
}

Rational cusp_order(const EtaQuotient& eq, std::int64_t d) {
  eq.validate();
  if (d < 1 || eq.level % d != 0)
    throw std::invalid_argument("cusp_order: " + std::to_string(d) + " does not divide level " +
                                std::to_string(eq.level));
  const std::int64_t n = eq.level;
  Rational sum = 0;
  for (const auto& [delta, r] : eq.exponents) {
    const std::int64_t g = gcd(d, delta);
    sum += Rational(BigInt(g) * g * r, BigInt(gcd(d, n / d)) * d * delta);
  }
  return Rational(n, 24) * sum;
}

CuspOrderTable cusp_orders(const EtaQuotient& eq) {
  CuspOrderTable table;
  for (const std::int64_t d : divisors(eq.level)) table.push_back({d, cusp_order(eq, d)});
  return table;
}

ModularityVerdict modularity_check(const EtaQuotient& eq) {
  eq.validate();
  ModularityVerdict v;
  const std::int64_t sum = eq.exponent_sum();
  v.integral_weight = sum % 2 == 0;
  if (v.integral_weight) v.weight = sum / 2;
  v.condition_24_delta = eq.delta_weighted_sum() % 24 == 0;
  v.condition_24_N_over_delta = eq.level_weighted_sum() % 24 == 0;
  v.character_s = character_base(eq);
  v.cusp_orders = cusp_orders(eq);
  v.holomorphic = true;
  for (const auto& c : v.cusp_orders)
    if (c.order < 0) v.holomorphic = false;
  return v;
}

TruncSeries q_expansion(const EtaQuotient& eq, std::size_t order, Domain domain) {
  eq.validate();
  const std::int64_t weighted = eq.delta_weighted_sum();
  if (weighted % 24 != 0)
    throw std::domain_error("q_expansion: prefactor q^(" + std::to_string(weighted) + "/24) is not integral");
  if (weighted < 0)
    throw std::domain_error("q_expansion: negative prefactor exponent " + std::to_string(weighted / 24));
  const auto lead = static_cast<std::size_t>(weighted / 24);
  if (lead >= order) return TruncSeries(order, domain);

  std::vector<series::EulerTerm> terms;
  for (const auto& [delta, r] : eq.exponents)
    if (r != 0) terms.push_back({delta, r});
  const TruncSeries body = series::euler_quotient(terms, order - lead, domain);
  return series::scale(series::shift(body, lead), eq.scalar);
}

std::int64_t sturm_bound(std::int64_t weight, std::int64_t level, bool same_character) {
  if (weight < 1 || level < 1) throw std::invalid_argument("sturm_bound: weight and level must be >= 1");
  Rational bound;
  if (same_character) {
    bound = Rational(BigInt(weight) * level, 12);
    for (const std::int64_t p : prime_divisors(level)) bound *= Rational(p + 1, p);
  } else {
    bound = Rational(BigInt(weight) * level * level, 12);
    for (const std::int64_t p : prime_divisors(level)) bound *= Rational(p * p - 1, p * p);
  }
  return static_cast<std::int64_t>(floor(bound));
}

TruncSeries u_operator(const TruncSeries& a, std::int64_t d) {
  if (d < 1) throw std::invalid_argument("u_operator: d must be >= 1");
  return series::dissect(a, d, 0);
}

TruncSeries u_operator_power(const TruncSeries& a, std::int64_t d, int times) {
  TruncSeries out = a;
  for (int i = 0; i < times; ++i) out = u_operator(out, d);
  return out;
}

CongruenceResult congruent_upto(const TruncSeries& a, const TruncSeries& b, const BigInt& modulus,
                                std::size_t bound) {
  if (modulus < 1) throw std::invalid_argument("congruent_upto: modulus must be positive");
  if (a.order() <= bound || b.order() <= bound)
    throw std::invalid_argument("congruent_upto: need order > " + std::to_string(bound) + ", have " +
                                std::to_string(std::min(a.order(), b.order())));
  for (const TruncSeries* s : {&a, &b})
    if (!s->domain().is_exact() && BigInt(s->domain().modulus()) % modulus != 0)
      throw series::DomainMismatch("congruent_upto: modulus " + modulus.str() + " does not divide " +
                                   s->domain().to_string());
  CongruenceResult result;
  result.bound = bound;
  for (std::size_t n = 0; n <= bound; ++n) {
    BigInt x = a.coeff(n) % modulus;
    BigInt y = b.coeff(n) % modulus;
    if (x < 0) x += modulus;
    if (y < 0) y += modulus;
    if (x != y) {
      result.holds = false;
      result.first_failure = n;
      result.lhs_residue = x;
      result.rhs_residue = y;
      break;
    }
  }
  return result;
}

int beta_k(int k) { return k % 2 == 0 ? 2 * k + 1 : 0; }

EtaQuotient a_k1(int k) {
  EtaQuotient eq;
  eq.level = 18;
  eq.exponents = {{1, ipow(3, k + 3) - 13}, {2, 8}, {3, -(ipow(3, k + 2) - 7)}};
  eq.scalar = 36;
  return eq;
}

EtaQuotient b_k1(int k) {
  EtaQuotient eq = a_k1(k);
  eq.scalar = BigInt(ipow(2, k + 2)) * ipow(3, k + 2);
  return eq;
}

EtaQuotient a_k2(int k) {
  EtaQuotient eq;
  eq.level = 36;
  eq.exponents = {{1, ipow(3, k + 2) - 6}, {2, 3}, {3, -(ipow(3, k + 1) - 2)}, {6, 3}};
  eq.scalar = 6;
  return eq;
}

EtaQuotient b_k2(int k) {
  EtaQuotient eq = a_k2(k);
  eq.scalar = BigInt(ipow(2, beta_k(k))) * ipow(3, k + 1);
  return eq;
}

}  // namespace pdot::modforms
