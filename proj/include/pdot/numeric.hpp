#pragma once

// Integer and rational helpers shared by every module.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pdot {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Positive divisors of n in ascending order. Requires n >= 1.
std::vector<std::int64_t> divisors(std::int64_t n);

/// Prime factorisation of n >= 1 as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

std::vector<std::int64_t> prime_divisors(std::int64_t n);

bool is_squarefree(std::int64_t n);

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// Nonnegative residue of a modulo m (m >= 1).
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

/// Inverse of a modulo m, or 0 when gcd(a, m) != 1.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);

BigInt floor(const Rational& q);

/// "num/den" with den > 0; integers are printed as "num/1".
std::string to_fraction_string(const Rational& q);

/// Inverse of to_fraction_string. Also accepts a bare integer.
Rational parse_fraction(const std::string& text);

}  // namespace pdot
