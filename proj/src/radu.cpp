#include "pdot/radu.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace pdot::radu {

namespace {

std::string join(const std::vector<int>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

void require_divides(std::int64_t delta, std::int64_t N, const char* op) {
  if (delta < 1 || N % delta != 0)
    throw std::invalid_argument(std::string(op) + ": " + std::to_string(delta) + " does not divide " +
                                std::to_string(N));
}

bool divides(const BigInt& d, const BigInt& n) { return d != 0 && n % d == 0; }

}  // namespace

void RaduInstance::validate() const {
  if (m < 1 || M < 1 || N < 1) throw std::invalid_argument("radu: m, M, N must be positive");
  if (t < 0 || t >= m)
    throw std::invalid_argument("radu: t = " + std::to_string(t) + " outside [0, " + std::to_string(m) + ")");
  const auto dm = divisors(M);
  if (r.size() != dm.size())
    throw std::invalid_argument("radu: r has " + std::to_string(r.size()) + " entries, M = " +
                                std::to_string(M) + " has " + std::to_string(dm.size()) + " divisors");
}

std::vector<std::int64_t> RaduInstance::divisors_of_M() const { return divisors(M); }

std::int64_t RaduInstance::k() const {
  const BigInt mm = BigInt(m) * m - 1;
  return static_cast<std::int64_t>(boost::multiprecision::gcd(mm, BigInt(24)));
}

std::int64_t RaduInstance::s_pow2() const {
  std::int64_t s = 0;
  const auto dm = divisors_of_M();
  for (std::size_t i = 0; i < dm.size(); ++i) {
    std::int64_t d = dm[i];
    std::int64_t v = 0;
    while (d % 2 == 0) {
      d /= 2;
      ++v;
    }
    s += v * std::llabs(r[i]);
  }
  return s;
}

BigInt RaduInstance::j_odd() const {
  BigInt j = 1;
  const auto dm = divisors_of_M();
  for (std::size_t i = 0; i < dm.size(); ++i) {
    std::int64_t d = dm[i];
    while (d % 2 == 0) d /= 2;
    j *= boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(std::llabs(r[i])));
  }
  return j;
}

std::int64_t RaduInstance::sum_r() const {
  std::int64_t s = 0;
  for (const auto x : r) s += x;
  return s;
}

std::int64_t RaduInstance::sum_delta_r() const {
  std::int64_t s = 0;
  const auto dm = divisors_of_M();
  for (std::size_t i = 0; i < dm.size(); ++i) s += dm[i] * r[i];
  return s;
}

bool DeltaStarVerdict::member() const {
  return std::all_of(conditions.begin(), conditions.end(), [](bool b) { return b; });
}

std::vector<int> DeltaStarVerdict::failed() const {
  std::vector<int> out;
  for (int i = 0; i < 6; ++i)
    if (!conditions[i]) out.push_back(i + 1);
  return out;
}

std::vector<std::int64_t> squares_mod(std::int64_t modulus) {
  if (modulus < 1) throw std::invalid_argument("squares_mod: modulus must be >= 1");
  std::set<std::int64_t> found;
  for (std::int64_t x = 0; x < modulus; ++x)
    if (gcd(x, modulus) == 1) found.insert(static_cast<std::int64_t>((static_cast<__int128>(x) * x) % modulus));
  return {found.begin(), found.end()};
}

std::vector<std::int64_t> p_set(const RaduInstance& inst) {
  inst.validate();
  const std::int64_t weighted = inst.sum_delta_r();
  std::set<std::int64_t> out;
  for (const std::int64_t s : squares_mod(24 * inst.m)) {
    if ((s - 1) % 24 != 0)
      throw std::logic_error("p_set: square class " + std::to_string(s) + " mod " +
                             std::to_string(24 * inst.m) + " is not 1 mod 24");
    const BigInt value = BigInt(inst.t) * s + BigInt((s - 1) / 24) * weighted;
    BigInt residue = value % inst.m;
    if (residue < 0) residue += inst.m;
    out.insert(static_cast<std::int64_t>(residue));
  }
  return {out.begin(), out.end()};
}

DeltaStarVerdict delta_star_check(const RaduInstance& inst) {
  inst.validate();
  DeltaStarVerdict v;
  const std::int64_t m = inst.m, N = inst.N, k = inst.k();
  const auto dm = inst.divisors_of_M();

  v.conditions[0] = true;
  for (const std::int64_t p : prime_divisors(m))
    if (N % p != 0) v.conditions[0] = false;

  v.conditions[1] = true;
  for (std::size_t i = 0; i < dm.size(); ++i)
    if (inst.r[i] != 0 && (m * N) % dm[i] != 0) v.conditions[1] = false;

  Rational weighted = 0;
  for (std::size_t i = 0; i < dm.size(); ++i) weighted += Rational(BigInt(inst.r[i]) * m * N, dm[i]);
  const Rational c3 = Rational(k * N) * weighted;
  v.conditions[2] = boost::multiprecision::denominator(c3) == 1 &&
                    boost::multiprecision::numerator(c3) % 24 == 0;

  v.conditions[3] = (BigInt(k) * N * inst.sum_r()) % 8 == 0;

  const BigInt lhs = BigInt(-24) * k * inst.t - BigInt(k) * inst.sum_delta_r();
  const BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(lhs), BigInt(24 * m));
  v.conditions[4] = divides(BigInt(24 * m) / g, BigInt(N));

  if (m % 2 == 0) {
    const std::int64_t s = inst.s_pow2();
    const BigInt j = inst.j_odd();
    const bool first = (k * N) % 4 == 0 && (BigInt(s) * N) % 8 == 0;
    const bool second = s % 2 == 0 && ((1 - j) * N) % 8 == 0;
    v.conditions[5] = first || second;
  } else {
    v.conditions[5] = true;
  }
  return v;
}

MinimumWitness p_mr_scan(const RaduInstance& inst, std::int64_t delta, std::int64_t lambda_range) {
  inst.validate();
  require_divides(delta, inst.N, "p_mr");
  const std::int64_t m = inst.m, k = inst.k();
  const auto dm = inst.divisors_of_M();
  std::optional<MinimumWitness> best;
  for (std::int64_t lambda = 0; lambda < lambda_range; ++lambda) {
    Rational sum = 0;
    for (std::size_t i = 0; i < dm.size(); ++i) {
      if (inst.r[i] == 0) continue;
      const std::int64_t d = dm[i];
      const std::int64_t g = gcd(d + d * k * lambda * delta, m * delta);
      sum += Rational(BigInt(inst.r[i]) * g * g, BigInt(d) * m);
    }
    sum /= 24;
    if (!best || sum < best->value) best = MinimumWitness{sum, lambda};
  }
  if (!best) throw std::invalid_argument("p_mr: empty lambda range");
  return *best;
}

MinimumWitness p_mr(const RaduInstance& inst, std::int64_t delta) { return p_mr_scan(inst, delta, inst.m); }

Rational p_star(const AuxExponents& aux, std::int64_t N, std::int64_t delta) {
  require_divides(delta, N, "p_star");
  const auto dn = divisors(N);
  if (aux.r_prime.size() != dn.size())
    throw std::invalid_argument("p_star: r' has " + std::to_string(aux.r_prime.size()) + " entries, N = " +
                                std::to_string(N) + " has " + std::to_string(dn.size()) + " divisors");
  Rational sum = 0;
  for (std::size_t i = 0; i < dn.size(); ++i) {
    const std::int64_t g = gcd(dn[i], delta);
    sum += Rational(BigInt(aux.r_prime[i]) * g * g, dn[i]);
  }
  return sum / 24;
}

BigInt gamma0_index(std::int64_t N) {
  BigInt index = 1;
  for (const auto& [p, e] : factorize(N))
    index *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(e - 1)) * (p + 1);
  return index;
}

NuBound nu_bound(const RaduInstance& inst, const AuxExponents& aux) {
  inst.validate();
  const auto dn = divisors(inst.N);
  if (aux.r_prime.size() != dn.size()) throw std::invalid_argument("nu_bound: r' length does not match N");
  std::int64_t sum_aux = 0, weighted_aux = 0;
  for (std::size_t i = 0; i < dn.size(); ++i) {
    sum_aux += aux.r_prime[i];
    weighted_aux += dn[i] * aux.r_prime[i];
  }
  const auto ps = p_set(inst);
  const std::int64_t t_min = *std::min_element(ps.begin(), ps.end());
  const Rational nu = Rational(BigInt(inst.sum_r() + sum_aux) * gamma0_index(inst.N) - weighted_aux, 24) -
                      Rational(inst.sum_delta_r(), 24 * inst.m) - Rational(t_min, inst.m);
  return {nu, floor(nu)};
}

series::TruncSeries c_r_series(const RaduInstance& inst, std::size_t order, std::uint64_t u) {
  inst.validate();
  const auto dm = inst.divisors_of_M();
  std::vector<series::EulerTerm> terms;
  for (std::size_t i = 0; i < dm.size(); ++i)
    if (inst.r[i] != 0) terms.push_back({dm[i], inst.r[i]});
  return series::euler_quotient(terms, order, series::Domain::residue(u));
}

Certificate radu_verify(const RaduInstance& inst, const AuxExponents& aux, std::uint64_t u) {
  using Kind = RaduInapplicable::Kind;
  inst.validate();
  if (u < 2) throw std::invalid_argument("radu_verify: modulus u must be >= 2");

  Certificate cert;
  cert.instance = inst;
  cert.aux = aux;
  cert.u = u;

  const bool squarefree = is_squarefree(inst.N) || (inst.N % 2 == 0 && is_squarefree(inst.N / 2));
  if (!squarefree)
    throw RaduInapplicable(Kind::level_not_squarefree,
                           "radu_verify: neither N = " + std::to_string(inst.N) + " nor N/2 is squarefree", cert);

  cert.delta_star = delta_star_check(inst);
  if (!cert.delta_star.member())
    throw RaduInapplicable(Kind::not_in_delta_star,
                           "radu_verify: tuple outside Delta* (failed conditions " +
                               join(cert.delta_star.failed()) + ")",
                           cert);

  cert.p_set = p_set(inst);
  bool nonneg = true;
  for (const std::int64_t delta : divisors(inst.N)) {
    const auto w = p_mr(inst, delta);
    NonnegCheck c{delta, w.value, w.lambda, p_star(aux, inst.N, delta)};
    if (c.sum() < 0) nonneg = false;
    cert.nonneg_checks.push_back(c);
  }
  if (!nonneg)
    throw RaduInapplicable(Kind::negative_order, "radu_verify: p_mr + p_star < 0 at some gamma_delta", cert);

  cert.nu = nu_bound(inst, aux);
  const std::int64_t n_max = cert.nu.floor < 0 ? -1 : static_cast<std::int64_t>(cert.nu.floor);
  const std::int64_t t_max = *std::max_element(cert.p_set.begin(), cert.p_set.end());
  const auto order = static_cast<std::size_t>(inst.m * std::max<std::int64_t>(n_max, 0) + t_max + 1);
  const auto series = c_r_series(inst, order, u);
  const auto coeffs = series.residues();

  cert.verdict = true;
  for (const std::int64_t tp : cert.p_set) {
    for (std::int64_t n = 0; n <= n_max; ++n) {
      cert.verified_range.emplace_back(tp, n);
      const std::uint64_t c = coeffs[static_cast<std::size_t>(inst.m * n + tp)];
      if (c != 0) {
        cert.verdict = false;
        cert.first_failure = CoefficientFailure{tp, n, c};
        return cert;
      }
    }
  }
  return cert;
}

nlohmann::json to_json(const Certificate& cert) {
  using nlohmann::json;
  const auto& inst = cert.instance;
  json nonneg = json::array();
  for (const auto& c : cert.nonneg_checks)
    nonneg.push_back({{"delta", c.delta},
                      {"p_mr", to_fraction_string(c.p_mr)},
                      {"lambda", c.lambda},
                      {"p_star", to_fraction_string(c.p_star)},
                      {"sum", to_fraction_string(c.sum())}});
  json range = json::array();
  for (const auto& [tp, n] : cert.verified_range) range.push_back({tp, n});
  json failure = nullptr;
  if (cert.first_failure)
    failure = {{"t_prime", cert.first_failure->t_prime},
               {"n", cert.first_failure->n},
               {"residue", cert.first_failure->residue}};
  return {
      {"instance",
       {{"m", inst.m}, {"M", inst.M}, {"N", inst.N}, {"r", inst.r}, {"t", inst.t}, {"k", inst.k()},
        {"s", inst.s_pow2()}, {"j", inst.j_odd().str()}}},
      {"aux", {{"r_prime", cert.aux.r_prime}}},
      {"u", cert.u},
      {"delta_star", cert.delta_star.conditions},
      {"p_set", cert.p_set},
      {"nonneg_checks", nonneg},
      {"nu", to_fraction_string(cert.nu.nu)},
      {"nu_floor", cert.nu.floor.str()},
      {"verified_range", range},
      {"first_failure", failure},
      {"verdict", cert.verdict},
  };
}

Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate cert;
  const auto& inst = j.at("instance");
  cert.instance.m = inst.at("m").get<std::int64_t>();
  cert.instance.M = inst.at("M").get<std::int64_t>();
  cert.instance.N = inst.at("N").get<std::int64_t>();
  cert.instance.r = inst.at("r").get<std::vector<std::int64_t>>();
  cert.instance.t = inst.at("t").get<std::int64_t>();
  cert.aux.r_prime = j.at("aux").at("r_prime").get<std::vector<std::int64_t>>();
  cert.u = j.at("u").get<std::uint64_t>();
  cert.delta_star.conditions = j.at("delta_star").get<std::array<bool, 6>>();
  cert.p_set = j.at("p_set").get<std::vector<std::int64_t>>();
  for (const auto& c : j.at("nonneg_checks"))
    cert.nonneg_checks.push_back({c.at("delta").get<std::int64_t>(), parse_fraction(c.at("p_mr").get<std::string>()),
                                  c.at("lambda").get<std::int64_t>(),
                                  parse_fraction(c.at("p_star").get<std::string>())});
  cert.nu.nu = parse_fraction(j.at("nu").get<std::string>());
  cert.nu.floor = BigInt(j.at("nu_floor").get<std::string>());
  for (const auto& pair : j.at("verified_range"))
    cert.verified_range.emplace_back(pair.at(0).get<std::int64_t>(), pair.at(1).get<std::int64_t>());
  if (!j.at("first_failure").is_null()) {
    const auto& f = j.at("first_failure");
    cert.first_failure = CoefficientFailure{f.at("t_prime").get<std::int64_t>(), f.at("n").get<std::int64_t>(),
                                            f.at("residue").get<std::uint64_t>()};
  }
  cert.verdict = j.at("verdict").get<bool>();
  return cert;
}

}  // namespace pdot::radu
