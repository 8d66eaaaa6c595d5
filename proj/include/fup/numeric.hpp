#pragma once

/* Small integer number theory shared across the library: safe modular
 * arithmetic, factorization and divisor enumeration at desk scale. */

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fup {

/* Floor modulus: result in [0, m) for m > 0, also for negative a. */
inline long long floor_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

/* (a * b) mod m for m > 0, exact through 128-bit intermediates. */
inline long long mul_mod(long long a, long long b, long long m) {
  __int128 p = static_cast<__int128>(a) * b;
  long long r = static_cast<long long>(p % m);
  return r < 0 ? r + m : r;
}

/* base^exp as long long; throws when the result would overflow. */
inline long long checked_pow(long long base, int exp) {
  if (base <= 0 || exp < 0) throw std::invalid_argument("checked_pow: base > 0, exp >= 0 required");
  long long result = 1;
  for (int i = 0; i < exp; ++i) {
    if (result > (std::numeric_limits<long long>::max)() / base)
      throw std::overflow_error("checked_pow: overflow");
    result *= base;
  }
  return result;
}

/* Prime factorization by trial division, (prime, exponent) pairs in
 * increasing prime order. Fine for the n <= ~10^12 this library meets. */
inline std::vector<std::pair<long long, int>> factorize(long long n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<long long, int>> factors;
  for (long long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

/* All positive divisors of n, sorted ascending. */
inline std::vector<long long> divisors(long long n) {
  auto factors = factorize(n);
  std::vector<long long> divs{1};
  for (const auto& [p, e] : factors) {
    const size_t base_count = divs.size();
    long long pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < base_count; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace fup
