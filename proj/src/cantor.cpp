#include "fup/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fup/errors.hpp"
#include "fup/numeric.hpp"

namespace fup {

namespace {
constexpr long long kMaxIterateCount = 1LL << 22;
}

Alphabet::Alphabet(long long m, std::vector<long long> digit_set)
    : modulus(m), digits(std::move(digit_set)) {
  if (modulus < 3) throw std::invalid_argument("Alphabet: modulus must be at least 3");
  std::sort(digits.begin(), digits.end());
  if (std::adjacent_find(digits.begin(), digits.end()) != digits.end())
    throw std::invalid_argument("Alphabet: digits must be distinct");
  if (size() <= 1 || size() >= modulus)
    throw std::invalid_argument("Alphabet: 1 < |digits| < M required");
}

double Alphabet::delta() const {
  return std::log(static_cast<double>(size())) / std::log(static_cast<double>(modulus));
}

long long Alphabet::max_abs_digit() const {
  long long m = 0;
  for (long long a : digits) m = std::max(m, a < 0 ? -a : a);
  return m;
}

IteratedAlphabet iterate(const Alphabet& base, int k) {
  if (k < 1) throw std::invalid_argument("iterate: k must be at least 1");
  const long long n = base.size();
  long long count = 1;
  for (int i = 0; i < k; ++i) {
    count *= n;
    if (count > kMaxIterateCount)
      throw feasibility_error("iterate: |digits|^k exceeds the enumeration budget");
  }
  checked_pow(base.modulus, k);  // reject scales beyond exact integer range

  IteratedAlphabet out{base, k, {}, {}};
  out.elements.resize(static_cast<size_t>(count));
  out.digit_tuples.resize(static_cast<size_t>(count) * k);

  std::vector<int> odo(static_cast<size_t>(k), 0);
  for (long long idx = 0; idx < count; ++idx) {
    long long value = 0;
    long long scale = 1;
    for (int j = 0; j < k; ++j) {
      const long long digit = base.digits[static_cast<size_t>(odo[static_cast<size_t>(j)])];
      out.digit_tuples[static_cast<size_t>(idx) * k + j] = digit;
      value += digit * scale;
      scale *= base.modulus;
    }
    out.elements[static_cast<size_t>(idx)] = value;
    for (int j = k - 1; j >= 0; --j) {
      if (++odo[static_cast<size_t>(j)] < n) break;
      odo[static_cast<size_t>(j)] = 0;
    }
  }

  /* Sort by value, keeping tuples aligned. */
  std::vector<long long> order(static_cast<size_t>(count));
  for (long long i = 0; i < count; ++i) order[static_cast<size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](long long a, long long b) {
    return out.elements[static_cast<size_t>(a)] < out.elements[static_cast<size_t>(b)];
  });
  IteratedAlphabet sorted{base, k, {}, {}};
  sorted.elements.reserve(out.elements.size());
  sorted.digit_tuples.reserve(out.digit_tuples.size());
  for (long long i : order) {
    sorted.elements.push_back(out.elements[static_cast<size_t>(i)]);
    for (int j = 0; j < k; ++j)
      sorted.digit_tuples.push_back(out.digit_tuples[static_cast<size_t>(i) * k + j]);
  }
  return sorted;
}

ReducedIterate reduce_mod(const IteratedAlphabet& iterated) {
  const long long scale = checked_pow(iterated.base.modulus, iterated.k);
  ReducedIterate out;
  out.values.reserve(iterated.elements.size());
  for (long long v : iterated.elements) out.values.push_back(floor_mod(v, scale));
  std::sort(out.values.begin(), out.values.end());
  const auto last = std::unique(out.values.begin(), out.values.end());
  out.collisions = last != out.values.end();
  out.values.erase(last, out.values.end());
  return out;
}

std::complex<double> nu_hat(const std::vector<long long>& e_set, double xi) {
  if (e_set.empty()) throw std::invalid_argument("nu_hat: empty set");
  std::complex<double> acc = 0.0;
  for (long long a : e_set) {
    const double phase = -2.0 * std::numbers::pi * std::remainder(xi * static_cast<double>(a), 1.0);
    acc += std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc / static_cast<double>(e_set.size());
}

std::complex<double> nu_hat(const std::vector<long long>& e_set, const Rational& xi) {
  if (e_set.empty()) throw std::invalid_argument("nu_hat: empty set");
  const long long n = xi.den;
  const long long c = floor_mod(xi.num, n);
  std::complex<double> acc = 0.0;
  for (long long a : e_set) {
    const long long reduced = mul_mod(c, floor_mod(a, n), n);
    const double phase = -2.0 * std::numbers::pi * (static_cast<double>(reduced) / static_cast<double>(n));
    acc += std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc / static_cast<double>(e_set.size());
}

bool nu_hat_is_zero(const std::vector<long long>& e_set, const Rational& point) {
  return vanishes_at(e_set, point);
}

TruncatedProduct mu_hat_truncated(const Alphabet& base, double xi, int J) {
  if (J < 1) throw std::invalid_argument("mu_hat_truncated: J must be at least 1");
  std::complex<double> product = 1.0;
  double scale = static_cast<double>(base.modulus);
  for (int j = 1; j <= J; ++j) {
    product *= nu_hat(base.digits, xi / scale);
    scale *= static_cast<double>(base.modulus);
  }
  /* Tail: sum_{j>J} 2 pi |xi| max|a| M^{-j} = 2 pi |xi| max|a| M^{-J}/(M-1). */
  const double m = static_cast<double>(base.modulus);
  const double tail = 2.0 * std::numbers::pi * std::abs(xi) *
                      static_cast<double>(base.max_abs_digit()) /
                      (std::pow(m, J) * (m - 1.0));
  return {product, tail};
}

}  // namespace fup
