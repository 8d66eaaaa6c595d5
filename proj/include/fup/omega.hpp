#pragma once

/* Counting of gap-constrained index tuples: q indices 0 <= s_1 < ... < s_q
 * <= k-1 with s_{p+1} - s_p >= L+1, by direct enumeration and by the
 * closed-form binomial count, in exact integer arithmetic. */

#include <optional>
#include <vector>

#include "fup/cyclotomic.hpp"  // BigInt

namespace fup {

struct OmegaSpec {
  long long q = 1;  // number of indices, >= 1
  long long k = 1;  // indices range over [0, k)
  long long l = 1;  // gap parameter, >= 1

  bool feasible() const { return k - (q - 1) * l >= q; }
};

/* Exact C(n, r); zero when n < r or r < 0. */
BigInt binomial(long long n, long long r);

/* Depth-first enumeration of all admissible tuples. Infeasible specs
 * return 0. When `tuples` is non-null the tuples themselves are collected
 * (kept optional so grid sweeps stay memory-light). */
long long enumerate_omega(const OmegaSpec& spec,
                          std::vector<std::vector<long long>>* tuples = nullptr);

/* Closed form C(k - (q-1)L, q), with C(n, q) = 0 for n < q. */
BigInt omega_formula(const OmegaSpec& spec);

/* Alternative closed form (k-(q-1)L)! / (q! (k-qL)!). Disagrees with the
 * enumeration for some parameters (e.g. q=2, k=10, L=3); kept for
 * regression comparison. Returns nullopt when a factorial argument is
 * negative or the quotient is not an integer. */
std::optional<BigInt> factorial_quotient_formula(const OmegaSpec& spec);

/* Exact check of sum_{a=1}^{N} C(a+q-1, q) == C(N+q, q+1). */
bool binom_identity_check(long long n, long long q);

}  // namespace fup
