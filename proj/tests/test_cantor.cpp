#include "doctest.h"

#include <numbers>
#include <random>

#include "fup/cantor.hpp"
#include "fup/errors.hpp"
#include "oracles.hpp"

using namespace fup;

TEST_SUITE_BEGIN("cantor");

TEST_CASE("alphabet validation") {
  CHECK_THROWS_AS(Alphabet(2, {0, 1}), std::invalid_argument);       // M < 3
  CHECK_THROWS_AS(Alphabet(4, {0}), std::invalid_argument);          // |digits| <= 1
  CHECK_THROWS_AS(Alphabet(4, {0, 1, 2, 3}), std::invalid_argument); // |digits| >= M
  CHECK_THROWS_AS(Alphabet(4, {0, 2, 2}), std::invalid_argument);    // duplicate
  const Alphabet a(4, {2, 0});
  CHECK(a.digits == std::vector<long long>{0, 2});
  CHECK(a.delta() == doctest::Approx(0.5).epsilon(1e-12));  // log 2 / log 4
}

TEST_CASE("iterate expands digit sums") {
  const IteratedAlphabet i1 = iterate(Alphabet(4, {0, 2}), 2);
  CHECK(i1.elements == std::vector<long long>{0, 2, 8, 10});
  const IteratedAlphabet i2 = iterate(Alphabet(12, {0, 8}), 2);
  CHECK(i2.elements == std::vector<long long>{0, 8, 96, 104});
  const IteratedAlphabet i3 = iterate(Alphabet(12, {0, 9}), 2);
  CHECK(i3.elements == std::vector<long long>{0, 9, 108, 117});
  CHECK_THROWS_AS(iterate(Alphabet(4, {0, 2}), 0), std::invalid_argument);

  // Digit tuples are retained and aligned with the values.
  for (long long idx = 0; idx < i3.count(); ++idx) {
    long long value = 0;
    long long place = 1;
    for (int j = 0; j < i3.k; ++j) {
      value += i3.tuple(idx)[j] * place;
      place *= i3.base.modulus;
    }
    CHECK(value == i3.elements[static_cast<size_t>(idx)]);
  }
}

TEST_CASE("iterate matches the direct expansion oracle") {
  std::mt19937_64 rng(90210);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<long long> m_dist(3, 9);
    const long long m = m_dist(rng);
    std::uniform_int_distribution<int> k_dist(1, 4);
    const int k = k_dist(rng);
    std::uniform_int_distribution<long long> digit_dist(0, m - 1);
    std::vector<long long> digits;
    while (digits.size() < 2) {
      const long long d = digit_dist(rng);
      if (std::find(digits.begin(), digits.end(), d) == digits.end()) digits.push_back(d);
    }
    auto expected = oracles::iterate_by_expansion(digits, m, k);
    std::sort(expected.begin(), expected.end());
    CHECK(iterate(Alphabet(m, digits), k).elements == expected);
  }
}

TEST_CASE("reduce_mod folds into the base range") {
  const ReducedIterate r1 = reduce_mod(iterate(Alphabet(4, {0, 1}), 2));
  CHECK(r1.values == std::vector<long long>{0, 1, 4, 5});
  CHECK_FALSE(r1.collisions);

  const ReducedIterate r2 = reduce_mod(iterate(Alphabet(24, {0, 18, 36, 54}), 1));
  CHECK(r2.values == std::vector<long long>{0, 6, 12, 18});
  CHECK_FALSE(r2.collisions);

  const ReducedIterate r3 = reduce_mod(iterate(Alphabet(5, {0, 5}), 1));
  CHECK(r3.values == std::vector<long long>{0});
  CHECK(r3.collisions);
}

TEST_CASE("nu_hat values") {
  CHECK(std::abs(nu_hat({0, 2}, 0.25)) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(nu_hat({0, 3, 7, 11}, 0.0) - 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(nu_hat({0, 8}, Rational(9, 12)) - 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(nu_hat({}, 0.5), std::invalid_argument);
}

TEST_CASE("nu_hat_is_zero pinned points") {
  CHECK(nu_hat_is_zero({0, 8}, Rational(9, 144)));
  CHECK(nu_hat_is_zero({0, 1, 9, 10}, Rational(8, 144)));
  CHECK_FALSE(nu_hat_is_zero({0, 1, 9, 10}, Rational(8, 12)));
}

TEST_CASE("nu_hat is 1-periodic") {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> xi_dist(-3.0, 3.0);
  std::uniform_int_distribution<long long> digit_dist(-40, 40);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<long long> e_set;
    while (e_set.size() < 4) {
      const long long d = digit_dist(rng);
      if (std::find(e_set.begin(), e_set.end(), d) == e_set.end()) e_set.push_back(d);
    }
    const double xi = xi_dist(rng);
    CHECK(std::abs(nu_hat(e_set, xi + 1.0) - nu_hat(e_set, xi)) < 1e-12);
  }
}

TEST_CASE("product formula: nu_hat of the iterate factors over scales") {
  std::mt19937_64 rng(161803);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<long long> m_dist(3, 8);
    const long long m = m_dist(rng);
    std::uniform_int_distribution<int> k_dist(1, 5);
    const int k = k_dist(rng);
    std::uniform_int_distribution<long long> digit_dist(0, m - 1);
    std::vector<long long> digits;
    while (digits.size() < 2) {
      const long long d = digit_dist(rng);
      if (std::find(digits.begin(), digits.end(), d) == digits.end()) digits.push_back(d);
    }
    const Alphabet base(m, digits);
    const IteratedAlphabet iter = iterate(base, k);
    std::uniform_int_distribution<long long> xi_dist(-1000, 1000);
    const long long xi = xi_dist(rng);

    long long scale = 1;
    std::complex<double> product = 1.0;
    for (int j = 1; j <= k; ++j) {
      scale *= m;
      product *= nu_hat(base.digits, Rational(xi, scale));
    }
    CHECK(std::abs(nu_hat(iter.elements, Rational(xi, scale)) - product) < 1e-10);
  }
}

TEST_CASE("nu_hat_is_zero never contradicts the floating-point magnitude") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<long long> n_dist(2, 2000);
  std::uniform_int_distribution<int> size_dist(2, 6);
  for (int trial = 0; trial < 10000; ++trial) {
    const long long n = n_dist(rng);
    std::uniform_int_distribution<long long> c_dist(1, n - 1);
    const long long c = c_dist(rng);
    std::uniform_int_distribution<long long> digit_dist(0, n - 1);
    std::vector<long long> e_set;
    const int size = static_cast<int>(std::min<long long>(size_dist(rng), n));  // need n distinct values
    while (e_set.size() < static_cast<size_t>(size)) {
      const long long d = digit_dist(rng);
      if (std::find(e_set.begin(), e_set.end(), d) == e_set.end()) e_set.push_back(d);
    }
    const Rational point(c, n);
    const double magnitude = std::abs(nu_hat(e_set, point));
    if (nu_hat_is_zero(e_set, point))
      CHECK(magnitude < 1e-9);
    else
      CHECK(magnitude > 1e-9);
  }
}

TEST_CASE("mu_hat_truncated values and truncation control") {
  const Alphabet a42(4, {0, 2});
  CHECK(std::abs(mu_hat_truncated(a42, 0.0, 7).value - 1.0) < 1e-14);
  CHECK(std::abs(mu_hat_truncated(a42, 1.0, 1).value) < 1e-14);        // factor nu_hat(1/4) = 0
  CHECK(std::abs(mu_hat_truncated(a42, 2.0, 1).value - 1.0) < 1e-14);  // factor nu_hat(2/4) = 1
  CHECK_THROWS_AS(mu_hat_truncated(a42, 1.0, 0), std::invalid_argument);

  // Cauchy property of the truncations.
  const Alphabet a128(12, {0, 8});
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> xi_dist(-200.0, 200.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double xi = xi_dist(rng);
    std::uniform_int_distribution<int> j_dist(1, 12);
    const int j = j_dist(rng);
    const auto t0 = mu_hat_truncated(a128, xi, j);
    const auto t1 = mu_hat_truncated(a128, xi, j + 1);
    const double bound = 2.0 * std::numbers::pi * std::abs(xi) * 8.0 * std::pow(12.0, -(j + 1));
    CHECK(std::abs(t0.value - t1.value) <= bound + 1e-12);
    CHECK(t1.tail_bound < t0.tail_bound);
  }

  // At xi = 9 + 12*9 = 117 the j = 2 factor is nu_hat(13/16) = 0 exactly
  // (117*8/144 = 6.5), so the whole product collapses.
  const auto collapsed = mu_hat_truncated(a128, 117.0, 40);
  CHECK(std::abs(collapsed.value) < 1e-15);
  CHECK(collapsed.tail_bound < 1e-30);

  // For an alphabet with no zero on the orbit, the product stays away from
  // zero: xi_0 = 8 + 12*2 = 32 against {0,1,9,10} (the two nonvanishing
  // factors are nu_hat(8/3) and nu_hat(2/9); the tail converges to 1).
  const Alphabet a16(12, {0, 1, 9, 10});
  const auto probe = mu_hat_truncated(a16, 32.0, 40);
  CHECK(std::abs(probe.value) == doctest::Approx(0.330824483545).epsilon(1e-9));
  CHECK(std::abs(probe.value) > 0.3);
  CHECK(probe.tail_bound < 1e-30);
}

TEST_SUITE_END();
