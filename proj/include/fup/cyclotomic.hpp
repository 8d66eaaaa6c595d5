#pragma once

/* Exact integer-polynomial arithmetic: cyclotomic polynomials, totients,
 * mask polynomials of digit sets, and a decision procedure for vanishing
 * of exponential sums at roots of unity. Everything here is exact; no
 * floating point is ever authoritative for a predicate. */

#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fup {

using BigInt = boost::multiprecision::cpp_int;

/* Dense integer-coefficient polynomial, trailing zeros trimmed, so the
 * leading coefficient is nonzero unless the polynomial is zero. */
class IntPolynomial {
 public:
  IntPolynomial() = default;  // the zero polynomial
  explicit IntPolynomial(std::vector<BigInt> coefficients);

  static IntPolynomial monomial(long long degree, BigInt coefficient = 1);
  /* x^n - 1 */
  static IntPolynomial power_minus_one(long long n);

  bool is_zero() const { return coeffs_.empty(); }
  /* Degree of the zero polynomial is -1. */
  long long degree() const { return static_cast<long long>(coeffs_.size()) - 1; }
  const BigInt& coeff(long long i) const;
  const BigInt& leading() const;
  bool is_monic() const { return !is_zero() && leading() == 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }

  BigInt operator()(const BigInt& x) const;  // Horner evaluation

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  bool operator==(const IntPolynomial&) const = default;

  /* Long division by a monic divisor; exact over the integers.
   * Throws std::invalid_argument when the divisor is zero or not monic. */
  struct DivisionResult;
  DivisionResult divide_by_monic(const IntPolynomial& divisor) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

struct IntPolynomial::DivisionResult {
  IntPolynomial quotient;
  IntPolynomial remainder;
};

/* Rational number in lowest terms with positive denominator. Construction
 * from any integer pair reduces; a zero denominator is rejected. */
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long numerator, long long denominator);
};

/* phi(n): count of 1 <= j <= n coprime to n; rejects n < 1. */
long long euler_totient(long long n);

/* Memoized cyclotomic polynomials. Reads are concurrent; inserts are
 * serialized, so the cache is safe to share across threads. */
class CyclotomicCache {
 public:
  /* Returns Phi_n, computing and caching it (and its divisors) on demand. */
  const IntPolynomial& get(long long n);

 private:
  const IntPolynomial* lookup(long long n) const;
  mutable std::shared_mutex mutex_;
  std::map<long long, IntPolynomial> table_;
};

/* Phi_n by exact division: (x^n - 1) / prod_{d|n, d<n} Phi_d. The division
 * must be exact; a nonzero remainder indicates an arithmetic bug and
 * throws verification_error. deg Phi_n == euler_totient(n). */
const IntPolynomial& cyclotomic_poly(long long n, CyclotomicCache& cache);
/* Same, using a process-wide shared cache. */
const IntPolynomial& cyclotomic_poly(long long n);

/* P_A(z) = sum_{a in A} z^a. All exponents must be nonnegative (translate
 * by -min(A) first); duplicates in A are rejected (A is a set). */
IntPolynomial mask_polynomial(const std::vector<long long>& a_set);

/* True iff exact division of p by the monic polynomial d leaves zero
 * remainder. Rejects zero or non-monic divisors. */
bool divides(const IntPolynomial& divisor, const IntPolynomial& p);

/* Exact decision of sum_{e in exponents} zeta^e == 0 for zeta a primitive
 * root of unity of the given order. `exponents` is a multiset; entries are
 * taken modulo the order. This is equivalent to divisibility of the
 * reduced mask polynomial by Phi_order, decided through the tensor basis
 * of Z[zeta] over the prime-power factors of the order (which stays cheap
 * even when the order is a large composite). */
bool root_of_unity_sum_is_zero(const std::vector<long long>& exponents, long long order);

/* True iff sum_{a in A} e^{2 pi i c a / N} == 0 for point = c/N (reduced).
 * Exact. A may contain negative integers; the sum is N-periodic in c.
 * c = 0 with nonempty A returns false; empty A is rejected. */
bool vanishes_at(const std::vector<long long>& a_set, const Rational& point);

/* zero_set[c] for c in [0, N): whether sum_{a in A} e^{2 pi i c a / N}
 * vanishes. Computed with one exact test per divisor of N (the verdict at
 * c depends only on N / gcd(c, N)), which makes exhaustive searches over
 * all residues cheap. */
std::vector<char> vanishing_set(const std::vector<long long>& a_set, long long modulus);

}  // namespace fup
