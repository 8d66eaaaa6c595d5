#include "fup/cyclotomic.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "fup/errors.hpp"
#include "fup/numeric.hpp"

namespace fup {

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::monomial(long long degree, BigInt coefficient) {
  if (degree < 0) throw std::invalid_argument("monomial: negative degree");
  std::vector<BigInt> c(static_cast<size_t>(degree) + 1);
  c.back() = std::move(coefficient);
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::power_minus_one(long long n) {
  if (n < 1) throw std::invalid_argument("power_minus_one: n must be positive");
  std::vector<BigInt> c(static_cast<size_t>(n) + 1);
  c[0] = -1;
  c.back() = 1;
  return IntPolynomial(std::move(c));
}

const BigInt& IntPolynomial::coeff(long long i) const {
  static const BigInt kZero = 0;
  if (i < 0 || i >= static_cast<long long>(coeffs_.size())) return kZero;
  return coeffs_[static_cast<size_t>(i)];
}

const BigInt& IntPolynomial::leading() const {
  if (is_zero()) throw std::logic_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

BigInt IntPolynomial::operator()(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < a.coeffs_.size()) c[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) c[i] += b.coeffs_[i];
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < a.coeffs_.size()) c[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) c[i] -= b.coeffs_[i];
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return IntPolynomial();
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial::DivisionResult IntPolynomial::divide_by_monic(const IntPolynomial& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  if (!divisor.is_monic()) throw std::invalid_argument("divide_by_monic: divisor must be monic");
  const long long dd = divisor.degree();
  if (degree() < dd) return {IntPolynomial(), *this};

  std::vector<BigInt> rem = coeffs_;
  std::vector<BigInt> quot(static_cast<size_t>(degree() - dd) + 1);
  for (long long i = degree(); i >= dd; --i) {
    BigInt& lead = rem[static_cast<size_t>(i)];
    if (lead == 0) continue;
    const BigInt q = lead;  // divisor is monic
    quot[static_cast<size_t>(i - dd)] = q;
    for (long long j = 0; j <= dd; ++j)
      rem[static_cast<size_t>(i - dd + j)] -= q * divisor.coeff(j);
  }
  return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long long i = degree(); i >= 0; --i) {
    const BigInt& c = coeff(i);
    if (c == 0) continue;
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << "-";
    first = false;
    const BigInt abs_c = abs(c);
    if (abs_c != 1 || i == 0) out << abs_c.str();
    if (i > 0) {
      out << "x";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

Rational::Rational(long long numerator, long long denominator) {
  if (denominator == 0) throw std::invalid_argument("Rational: zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const long long g = std::gcd(numerator < 0 ? -numerator : numerator, denominator);
  num = numerator / g;
  den = denominator / g;
}

long long euler_totient(long long n) {
  if (n < 1) throw std::invalid_argument("euler_totient: n must be positive");
  long long phi = 1;
  for (const auto& [p, e] : factorize(n)) {
    long long pk = 1;
    for (int i = 1; i < e; ++i) pk *= p;
    phi *= pk * (p - 1);
  }
  return phi;
}

namespace {

/* Bound below which each freshly computed Phi_n is re-checked against the
 * defining identity prod_{d|n} Phi_d = x^n - 1. */
constexpr long long kSelfTestBound = 64;

}  // namespace

const IntPolynomial* CyclotomicCache::lookup(long long n) const {
  std::shared_lock lock(mutex_);
  auto it = table_.find(n);
  return it == table_.end() ? nullptr : &it->second;
}

const IntPolynomial& CyclotomicCache::get(long long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be positive");
  if (const IntPolynomial* hit = lookup(n)) return *hit;

  const std::vector<long long> divs = divisors(n);
  IntPolynomial product = IntPolynomial::monomial(0);  // 1
  for (long long d : divs)
    if (d < n) product = product * get(d);

  auto [quotient, remainder] = IntPolynomial::power_minus_one(n).divide_by_monic(product);
  if (!remainder.is_zero())
    throw verification_error("cyclotomic division left a nonzero remainder at n=" + std::to_string(n));
  if (quotient.degree() != euler_totient(n))
    throw verification_error("cyclotomic degree mismatch at n=" + std::to_string(n));

  if (n <= kSelfTestBound) {
    IntPolynomial full = product * quotient;
    if (!(full == IntPolynomial::power_minus_one(n)))
      throw verification_error("cyclotomic self-test failed at n=" + std::to_string(n));
  }

  std::unique_lock lock(mutex_);
  return table_.emplace(n, std::move(quotient)).first->second;
}

const IntPolynomial& cyclotomic_poly(long long n, CyclotomicCache& cache) { return cache.get(n); }

const IntPolynomial& cyclotomic_poly(long long n) {
  static CyclotomicCache shared_cache;
  return shared_cache.get(n);
}

IntPolynomial mask_polynomial(const std::vector<long long>& a_set) {
  if (a_set.empty()) return IntPolynomial();
  long long max_a = 0;
  for (long long a : a_set) {
    if (a < 0) throw std::invalid_argument("mask_polynomial: negative exponent " + std::to_string(a));
    max_a = std::max(max_a, a);
  }
  std::vector<BigInt> c(static_cast<size_t>(max_a) + 1);
  for (long long a : a_set) {
    if (c[static_cast<size_t>(a)] != 0)
      throw std::invalid_argument("mask_polynomial: duplicate exponent " + std::to_string(a));
    c[static_cast<size_t>(a)] = 1;
  }
  return IntPolynomial(std::move(c));
}

bool divides(const IntPolynomial& divisor, const IntPolynomial& p) {
  if (divisor.is_zero()) throw std::invalid_argument("divides: zero divisor");
  if (!divisor.is_monic())
    throw std::invalid_argument("divides: non-monic divisors are unsupported");
  return p.divide_by_monic(divisor).remainder.is_zero();
}

namespace {

/* One prime-power component p^e of the order. Elements zeta^t, t in
 * [0, p^e), are expressed in the basis {zeta^t : t < phi(p^e)} using the
 * single relation 1 + zeta^{p^{e-1}} + ... + zeta^{(p-1)p^{e-1}} = 0. */
struct PrimePowerComponent {
  long long prime;
  long long power;       // p^e
  long long sub_power;   // p^{e-1}
  long long basis_size;  // phi(p^e)
};

}  // namespace

bool root_of_unity_sum_is_zero(const std::vector<long long>& exponents, long long order) {
  if (order < 1) throw std::invalid_argument("root_of_unity_sum_is_zero: order must be positive");
  if (exponents.empty()) return true;
  if (order == 1) return false;  // sum of |exponents| ones

  std::vector<PrimePowerComponent> components;
  for (const auto& [p, e] : factorize(order)) {
    PrimePowerComponent c;
    c.prime = p;
    c.power = 1;
    for (int i = 0; i < e; ++i) c.power *= p;
    c.sub_power = c.power / p;
    c.basis_size = c.sub_power * (p - 1);
    components.push_back(c);
  }

  /* Mixed-radix strides over the tensor basis; total dimension phi(order). */
  std::vector<long long> stride(components.size());
  long long dim = 1;
  for (size_t i = components.size(); i-- > 0;) {
    stride[i] = dim;
    dim *= components[i].basis_size;
  }

  std::unordered_map<long long, long long> coords;
  std::vector<std::pair<long long, int>> local[2];  // (basis offset, sign) per component, ping-pong
  for (long long e : exponents) {
    const long long j = floor_mod(e, order);
    /* Expand zeta_order^j over the tensor basis; at most prod (p_i - 1) terms. */
    std::vector<std::pair<long long, int>> terms{{0, +1}};
    for (size_t i = 0; i < components.size(); ++i) {
      const auto& c = components[i];
      const long long t = j % c.power;
      const long long u = t / c.sub_power;
      const long long v = t % c.sub_power;
      auto& expansion = local[0];
      expansion.clear();
      if (u < c.prime - 1) {
        expansion.emplace_back(u * c.sub_power + v, +1);
      } else {
        for (long long w = 0; w + 1 < c.prime; ++w)
          expansion.emplace_back(w * c.sub_power + v, -1);
      }
      auto& next = local[1];
      next.clear();
      next.reserve(terms.size() * expansion.size());
      for (const auto& [off, sg] : terms)
        for (const auto& [loff, lsg] : expansion)
          next.emplace_back(off + loff * stride[i], sg * lsg);
      terms.swap(next);
    }
    for (const auto& [off, sg] : terms) coords[off] += sg;
  }

  for (const auto& [off, value] : coords)
    if (value != 0) return false;
  return true;
}

bool vanishes_at(const std::vector<long long>& a_set, const Rational& point) {
  if (a_set.empty()) throw std::invalid_argument("vanishes_at: empty set");
  if (point.num == 0 || point.den == 1) return false;  // all terms equal 1
  const long long d = point.den;
  const long long c = floor_mod(point.num, d);
  std::vector<long long> exps;
  exps.reserve(a_set.size());
  for (long long a : a_set) exps.push_back(mul_mod(c, floor_mod(a, d), d));
  return root_of_unity_sum_is_zero(exps, d);
}

std::vector<char> vanishing_set(const std::vector<long long>& a_set, long long modulus) {
  if (modulus < 1) throw std::invalid_argument("vanishing_set: modulus must be positive");
  if (a_set.empty()) throw std::invalid_argument("vanishing_set: empty set");

  /* The verdict at c depends only on d = modulus / gcd(c, modulus): the sum
   * at c is a Galois conjugate of the sum at any other c' with the same d. */
  std::unordered_map<long long, bool> by_divisor;
  for (long long d : divisors(modulus)) {
    if (d == 1) {
      by_divisor[d] = false;
      continue;
    }
    std::vector<long long> exps;
    exps.reserve(a_set.size());
    for (long long a : a_set) exps.push_back(floor_mod(a, d));
    by_divisor[d] = root_of_unity_sum_is_zero(exps, d);
  }

  std::vector<char> zero_set(static_cast<size_t>(modulus), 0);
  for (long long c = 1; c < modulus; ++c)
    zero_set[static_cast<size_t>(c)] = by_divisor[modulus / std::gcd(c, modulus)] ? 1 : 0;
  return zero_set;
}

}  // namespace fup
