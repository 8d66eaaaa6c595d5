#include "doctest.h"

#include <random>

#include "fup/cyclotomic.hpp"
#include "fup/errors.hpp"
#include "fup/numeric.hpp"
#include "oracles.hpp"

using namespace fup;

TEST_SUITE_BEGIN("cyclotomic");

TEST_CASE("euler totient values") {
  CHECK(euler_totient(1) == 1);
  CHECK(euler_totient(12) == oracles::totient_by_enumeration(12));  // {1,5,7,11}
  CHECK(euler_totient(12) == 4);
  for (long long p : {2, 3, 5, 7, 11, 13, 31}) CHECK(euler_totient(p) == p - 1);
  for (long long n = 1; n <= 100; ++n) CHECK(euler_totient(n) == oracles::totient_by_enumeration(n));
  CHECK_THROWS_AS(euler_totient(0), std::invalid_argument);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == IntPolynomial({-1, 1}));        // x - 1
  CHECK(cyclotomic_poly(2) == IntPolynomial({1, 1}));         // x + 1
  CHECK(cyclotomic_poly(6) == IntPolynomial({1, -1, 1}));     // x^2 - x + 1
  IntPolynomial phi32 = cyclotomic_poly(32);                  // x^16 + 1
  CHECK(phi32.degree() == 16);
  CHECK(phi32 == IntPolynomial::monomial(16) + IntPolynomial::monomial(0));
}

TEST_CASE("product of cyclotomics over divisors is x^n - 1, degrees match totient") {
  CyclotomicCache cache;
  for (long long n = 1; n <= 200; ++n) {
    IntPolynomial product = IntPolynomial::monomial(0);
    for (long long d : divisors(n)) product = product * cyclotomic_poly(d, cache);
    CHECK(product == IntPolynomial::power_minus_one(n));
    CHECK(cyclotomic_poly(n, cache).degree() == euler_totient(n));
  }
}

TEST_CASE("mask polynomial") {
  CHECK(mask_polynomial({0, 8}) == IntPolynomial::monomial(0) + IntPolynomial::monomial(8));
  CHECK(mask_polynomial({0, 1, 9, 10}) == IntPolynomial({1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1}));
  // (1 + x)(1 + x^16) expanded
  CHECK(mask_polynomial({0, 1, 16, 17}) ==
        IntPolynomial({1, 1}) * (IntPolynomial::monomial(0) + IntPolynomial::monomial(16)));
  CHECK(mask_polynomial({0, 3})(1) == 2);  // P_A(1) == |A|
  CHECK_THROWS_AS(mask_polynomial({-1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(mask_polynomial({2, 2}), std::invalid_argument);
}

TEST_CASE("divisibility") {
  const IntPolynomial phi2({1, 1});
  CHECK(divides(phi2, mask_polynomial({0, 9})));           // 1 + x divides 1 + x^9
  CHECK(divides(phi2, mask_polynomial({0, 1, 9, 10})));    // P(-1) = 0
  CHECK_FALSE(divides(cyclotomic_poly(3), IntPolynomial({1, 1})));
  CHECK_THROWS_AS(divides(IntPolynomial(), phi2), std::invalid_argument);
  CHECK_THROWS_AS(divides(IntPolynomial({1, 2}), phi2), std::invalid_argument);  // non-monic
}

TEST_CASE("vanishes_at on pinned points") {
  CHECK(vanishes_at({0, 8}, Rational(9, 144)));        // phases 0 and pi
  CHECK_FALSE(vanishes_at({0, 8}, Rational(9, 12)));   // 8*9/12 is an integer
  CHECK(vanishes_at({0, 2}, Rational(1, 4)));          // 1 + e^{pi i}
  CHECK_FALSE(vanishes_at({0, 5}, Rational(0, 7)));    // c = 0: sum = |A|
  CHECK_THROWS_AS(vanishes_at({0, 1}, Rational(1, 0)), std::invalid_argument);  // N = 0
  CHECK_THROWS_AS(vanishes_at({}, Rational(1, 4)), std::invalid_argument);
}

TEST_CASE("root-of-unity sum decision against explicit polynomial division") {
  // Same predicate by the dense route: Phi_d | sum_i x^{e_i mod d}.
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long long> order_dist(2, 150);
  std::uniform_int_distribution<int> size_dist(1, 8);
  for (int trial = 0; trial < 2000; ++trial) {
    const long long d = order_dist(rng);
    const int size = size_dist(rng);
    std::uniform_int_distribution<long long> exp_dist(0, 3 * d);
    std::vector<long long> exponents(static_cast<size_t>(size));
    for (auto& e : exponents) e = exp_dist(rng);

    std::vector<BigInt> coeffs(static_cast<size_t>(d));
    for (long long e : exponents) coeffs[static_cast<size_t>(e % d)] += 1;
    const bool by_division = divides(cyclotomic_poly(d), IntPolynomial(coeffs));
    CHECK(root_of_unity_sum_is_zero(exponents, d) == by_division);
  }
  // Structured zero sums: full prime cosets and unions of them.
  CHECK(root_of_unity_sum_is_zero({0, 1, 2, 3, 4}, 5));
  CHECK(root_of_unity_sum_is_zero({0, 5, 10, 3, 8, 13}, 15));  // two cosets of 5 Z_15
  CHECK_FALSE(root_of_unity_sum_is_zero({0, 1, 2, 3}, 5));
  CHECK(root_of_unity_sum_is_zero({}, 7));
  CHECK_FALSE(root_of_unity_sum_is_zero({0}, 1));
}

TEST_CASE("vanishes_at agrees with the floating-point test on random points") {
  std::mt19937_64 rng(777101);
  std::uniform_int_distribution<long long> n_dist(2, 10000);
  std::uniform_int_distribution<int> size_dist(2, 8);
  for (int trial = 0; trial < 10000; ++trial) {
    const long long n = n_dist(rng);
    std::uniform_int_distribution<long long> c_dist(1, n - 1);
    const long long c = c_dist(rng);
    const int size = static_cast<int>(std::min<long long>(size_dist(rng), 2 * n + 1));
    std::uniform_int_distribution<long long> digit_dist(0, 2 * n);
    std::vector<long long> a_set;
    while (a_set.size() < static_cast<size_t>(size)) {
      const long long d = digit_dist(rng);
      if (std::find(a_set.begin(), a_set.end(), d) == a_set.end()) a_set.push_back(d);
    }
    const bool exact = vanishes_at(a_set, Rational(c, n));
    const bool numeric = oracles::exponential_sum_abs(a_set, c, n) < 1e-9;
    CHECK(exact == numeric);
  }
}

TEST_CASE("vanishes_at is invariant under translation of A and period shifts of c") {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<long long> n_dist(2, 500);
  std::uniform_int_distribution<long long> shift_dist(-100, 100);
  std::uniform_int_distribution<int> size_dist(2, 6);
  for (int trial = 0; trial < 500; ++trial) {
    const long long n = n_dist(rng);
    std::uniform_int_distribution<long long> c_dist(1, n - 1);
    const long long c = c_dist(rng);
    const int size = static_cast<int>(std::min<long long>(size_dist(rng), 2 * n + 1));
    std::uniform_int_distribution<long long> digit_dist(-n, n);
    std::vector<long long> a_set;
    while (a_set.size() < static_cast<size_t>(size)) {
      const long long d = digit_dist(rng);
      if (std::find(a_set.begin(), a_set.end(), d) == a_set.end()) a_set.push_back(d);
    }
    const bool base = vanishes_at(a_set, Rational(c, n));
    const long long t = shift_dist(rng);
    std::vector<long long> shifted = a_set;
    for (auto& d : shifted) d += t;
    CHECK(vanishes_at(shifted, Rational(c, n)) == base);
    CHECK(vanishes_at(a_set, Rational(c + n, n)) == base);
    CHECK(vanishes_at(a_set, Rational(c - n, n)) == base);
  }
}

TEST_CASE("vanishing_set matches pointwise queries") {
  for (const auto& a_set : std::vector<std::vector<long long>>{{0, 8}, {0, 1, 9, 10}, {0, 2, 4}}) {
    const long long n = 144;
    const auto set = vanishing_set(a_set, n);
    REQUIRE(set.size() == static_cast<size_t>(n));
    CHECK_FALSE(static_cast<bool>(set[0]));
    for (long long c = 1; c < n; ++c)
      CHECK(static_cast<bool>(set[static_cast<size_t>(c)]) == vanishes_at(a_set, Rational(c, n)));
  }
}

TEST_CASE("rational reduction") {
  const Rational r(9, 144);
  CHECK(r.num == 1);
  CHECK(r.den == 16);
  const Rational s(-3, -6);
  CHECK(s.num == 1);
  CHECK(s.den == 2);
  const Rational z(0, 5);
  CHECK(z.num == 0);
  CHECK(z.den == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("exact division") {
  auto division = IntPolynomial({1, 0, 1}).divide_by_monic(IntPolynomial({1, 1}));
  CHECK(division.remainder == IntPolynomial({2}));
  CHECK(division.quotient == IntPolynomial({-1, 1}));
  CHECK_FALSE(divides(IntPolynomial({1, 1}), IntPolynomial({1, 0, 1})));
}

TEST_SUITE_END();
