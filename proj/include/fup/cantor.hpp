#pragma once

/* Cantor alphabet iteration A_k = A + M*A + ... + M^{k-1}*A and Fourier
 * transforms of the associated discrete and self-similar measures. */

#include <complex>
#include <cstdint>
#include <vector>

#include "fup/cyclotomic.hpp"

namespace fup {

/* A modulus M >= 3 together with a set of distinct integer digits,
 * 1 < |digits| < M. Digits may lie outside [0, M). */
struct Alphabet {
  Alphabet(long long modulus, std::vector<long long> digit_set);

  long long modulus;
  std::vector<long long> digits;  // sorted, distinct

  long long size() const { return static_cast<long long>(digits.size()); }
  /* delta = log |digits| / log M, the dimension exponent. */
  double delta() const;
  /* max_{a in digits} |a|, used in truncation bounds. */
  long long max_abs_digit() const;
};

/* The k-th iterate as a multiset with digitization. `elements` holds
 * sum_j d_j M^j for every digit tuple, sorted ascending; `digit_tuples`
 * is row-major with stride k, aligned with `elements`, storing
 * (d_0, ..., d_{k-1}) with d_0 the M^0 digit. Tuples are retained even
 * when two of them produce the same value (possible only when digits lie
 * outside [0, M)). */
struct IteratedAlphabet {
  Alphabet base;
  int k;
  std::vector<long long> elements;
  std::vector<long long> digit_tuples;

  long long count() const { return static_cast<long long>(elements.size()); }
  const long long* tuple(long long i) const { return digit_tuples.data() + i * k; }
};

IteratedAlphabet iterate(const Alphabet& base, int k);

struct ReducedIterate {
  std::vector<long long> values;  // sorted, de-duplicated, in [0, M^k)
  bool collisions = false;
};

/* Elements reduced into {0, ..., M^k - 1}; the flag records whether two
 * digit tuples collapsed onto the same residue. */
ReducedIterate reduce_mod(const IteratedAlphabet& iterated);

/* nu_hat_E(xi) = (1/|E|) sum_{a in E} e^{-2 pi i xi a}. E must be nonempty. */
std::complex<double> nu_hat(const std::vector<long long>& e_set, double xi);

/* Same value at a rational point, with each phase reduced modulo 1 in exact
 * integer arithmetic before trigonometric evaluation. */
std::complex<double> nu_hat(const std::vector<long long>& e_set, const Rational& xi);

/* Exact zero test for nu_hat at a rational point. The e^{-2 pi i xi a} sign
 * convention is absorbed: vanishing is conjugation-invariant. */
bool nu_hat_is_zero(const std::vector<long long>& e_set, const Rational& point);

struct TruncatedProduct {
  std::complex<double> value;
  /* Bound on the distance to the infinite product, from
   * |nu_hat_A(eta) - 1| <= 2 pi |eta| max|a| summed over the tail. */
  double tail_bound;
};

/* prod_{j=1}^{J} nu_hat_A(M^{-j} xi), the J-term truncation of the Fourier
 * transform of the self-similar measure generated by (M, A). */
TruncatedProduct mu_hat_truncated(const Alphabet& base, double xi, int J);

}  // namespace fup
