#include "fup/omega.hpp"

#include <stdexcept>

#include "fup/errors.hpp"

namespace fup {

BigInt binomial(long long n, long long r) {
  if (r < 0 || n < r) return 0;
  r = std::min(r, n - r);
  BigInt result = 1;
  for (long long i = 1; i <= r; ++i) {
    result *= (n - r + i);
    result /= i;  // exact: the running value is C(n-r+i, i)
  }
  return result;
}

namespace {

constexpr long long kEnumerationBudget = 100000000;

long long count_from(long long start, long long remaining, long long k, long long gap,
                     std::vector<long long>& partial, long long& budget,
                     std::vector<std::vector<long long>>* tuples) {
  if (remaining == 0) {
    if (tuples) tuples->push_back(partial);
    return 1;
  }
  long long total = 0;
  for (long long s = start; s <= k - 1 - (remaining - 1) * gap; ++s) {
    if (--budget < 0) throw feasibility_error("enumerate_omega: budget exceeded");
    partial.push_back(s);
    total += count_from(s + gap, remaining - 1, k, gap, partial, budget, tuples);
    partial.pop_back();
  }
  return total;
}

BigInt factorial(long long n) {
  BigInt f = 1;
  for (long long i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

long long enumerate_omega(const OmegaSpec& spec, std::vector<std::vector<long long>>* tuples) {
  if (spec.q < 1 || spec.k < 1 || spec.l < 1)
    throw std::invalid_argument("enumerate_omega: q, k, L must all be at least 1");
  std::vector<long long> partial;
  long long budget = kEnumerationBudget;
  return count_from(0, spec.q, spec.k, spec.l + 1, partial, budget, tuples);
}

BigInt omega_formula(const OmegaSpec& spec) {
  if (spec.q < 1 || spec.k < 1 || spec.l < 1)
    throw std::invalid_argument("omega_formula: q, k, L must all be at least 1");
  return binomial(spec.k - (spec.q - 1) * spec.l, spec.q);
}

std::optional<BigInt> factorial_quotient_formula(const OmegaSpec& spec) {
  const long long top = spec.k - (spec.q - 1) * spec.l;
  const long long bottom = spec.k - spec.q * spec.l;
  if (top < 0 || bottom < 0) return std::nullopt;
  const BigInt numerator = factorial(top);
  const BigInt denominator = factorial(spec.q) * factorial(bottom);
  if (numerator % denominator != 0) return std::nullopt;
  return numerator / denominator;
}

bool binom_identity_check(long long n, long long q) {
  if (n < 1 || q < 1) throw std::invalid_argument("binom_identity_check: N, q must be at least 1");
  BigInt lhs = 0;
  for (long long a = 1; a <= n; ++a) lhs += binomial(a + q - 1, q);
  return lhs == binomial(n + q, q + 1);
}

}  // namespace fup
