#pragma once

// Reference computations written independently of the library, used to
// cross-check it. They favour obviousness over speed.

#include <cstdint>
#include <vector>

#include "pdot/numeric.hpp"

namespace oracle {

using pdot::BigInt;
using Poly = std::vector<BigInt>;

// a * (1 - q^k) truncated to a.size().
inline void times_one_minus(Poly& a, std::size_t k) {
  for (std::size_t n = a.size(); n-- > k;) a[n] -= a[n - k];
}

// a / (1 - q^k) truncated to a.size().
inline void over_one_minus(Poly& a, std::size_t k) {
  for (std::size_t n = k; n < a.size(); ++n) a[n] += a[n - k];
}

// prod f_m^e by multiplying out every factor (1 - q^{jm}) one at a time.
inline Poly naive_product(const std::vector<std::pair<std::int64_t, std::int64_t>>& factors, std::size_t order) {
  Poly a(order, 0);
  if (order == 0) return a;
  a[0] = 1;
  for (const auto& [m, e] : factors)
    for (std::size_t step = static_cast<std::size_t>(m); step < order; step += static_cast<std::size_t>(m))
      for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) {
        if (e > 0)
          times_one_minus(a, step);
        else
          over_one_minus(a, step);
      }
  return a;
}

// Partition numbers from Euler's pentagonal recurrence.
inline Poly partition_numbers(std::size_t order) {
  Poly p(order, 0);
  if (order == 0) return p;
  p[0] = 1;
  for (std::size_t n = 1; n < order; ++n) {
    BigInt sum = 0;
    for (std::int64_t k = 1;; ++k) {
      const auto g1 = static_cast<std::size_t>(k * (3 * k - 1) / 2);
      if (g1 > n) break;
      const int sign = (k % 2 == 1) ? 1 : -1;
      sum += sign * p[n - g1];
      const auto g2 = static_cast<std::size_t>(k * (3 * k + 1) / 2);
      if (g2 <= n) sum += sign * p[n - g2];
    }
    p[n] = sum;
  }
  return p;
}

// #{(x, y) : x^2 + xy + y^2 = n} by scanning a box.
inline Poly cubic_theta_lattice(std::size_t order) {
  Poly c(order, 0);
  const auto r = static_cast<std::int64_t>(order) + 1;
  for (std::int64_t x = -r; x <= r; ++x)
    for (std::int64_t y = -r; y <= r; ++y) {
      const std::int64_t n = x * x + x * y + y * y;
      if (n < static_cast<std::int64_t>(order)) c[static_cast<std::size_t>(n)] += 1;
    }
  return c;
}

// Legendre symbol by listing the squares mod p.
inline int legendre_by_squares(std::int64_t a, std::int64_t p) {
  const std::int64_t r = ((a % p) + p) % p;
  if (r == 0) return 0;
  for (std::int64_t x = 1; x < p; ++x)
    if (x * x % p == r) return 1;
  return -1;
}

// Kronecker symbol from its multiplicative definition over the factorisation
// of n, with the conventions for 2, -1 and 0.
inline int kronecker_by_definition(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    const std::int64_t r = ((a % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  for (std::int64_t p = 3; n > 1; p += 2)
    while (n % p == 0) {
      n /= p;
      result *= legendre_by_squares(a, p);
    }
  return result;
}

}  // namespace oracle
