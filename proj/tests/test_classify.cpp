#include "doctest.h"

#include <algorithm>
#include <functional>
#include <set>

#include "fup/classify.hpp"
#include "fup/cyclotomic.hpp"
#include "fup/errors.hpp"
#include "fup/numeric.hpp"

using namespace fup;

TEST_SUITE_BEGIN("classify");

namespace {

std::vector<std::pair<long long, long long>> as_pairs(const M2PairFamily& family) {
  std::vector<std::pair<long long, long long>> out;
  for (const auto& p : family.pairs) out.emplace_back(p.a, p.b);
  return out;
}

/* Reference search: same canonical space, but every pair goes through the
 * exact predicate directly. Catches false negatives of the mask fast path. */
std::vector<std::pair<std::vector<long long>, std::vector<long long>>> brute_force_dsp(
    long long m, const std::vector<int>& sizes) {
  std::vector<std::pair<std::vector<long long>, std::vector<long long>>> out;
  for (int size : sizes) {
    std::vector<std::vector<long long>> sets;
    std::vector<long long> comb;
    // all canonical sets of this size
    const std::function<void(long long)> rec = [&](long long next) {
      if (comb.size() == static_cast<size_t>(size - 1)) {
        std::vector<long long> s{0};
        s.insert(s.end(), comb.begin(), comb.end());
        sets.push_back(s);
        return;
      }
      for (long long d = next; d < m; ++d) {
        comb.push_back(d);
        rec(d + 1);
        comb.pop_back();
      }
    };
    rec(1);
    for (const auto& a : sets)
      for (const auto& b : sets) {
        if (a > b) continue;
        if (is_distributed_spectral_pair(a, b, m)) out.emplace_back(a, b);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("spectral pairs in Z_{M^2}: pinned families") {
  const auto m12 = spectral_pairs_in_M2(12);
  CHECK(as_pairs(m12) == std::vector<std::pair<long long, long long>>{{8, 9}, {9, 8}});
  for (const auto& p : m12.pairs) CHECK(p.provenance == "constructed-case-1");

  const auto m30 = spectral_pairs_in_M2(30);
  CHECK(as_pairs(m30) == std::vector<std::pair<long long, long long>>{{18, 25}, {25, 18}});
  for (const auto& p : m30.pairs) CHECK(p.provenance == "constructed-case-3");

  const auto m24 = spectral_pairs_in_M2(24);
  CHECK(as_pairs(m24) == std::vector<std::pair<long long, long long>>{{16, 18}, {18, 16}});

  const auto m40 = spectral_pairs_in_M2(40);
  CHECK(as_pairs(m40) == std::vector<std::pair<long long, long long>>{{25, 32}, {32, 25}});

  CHECK(spectral_pairs_in_M2(20).pairs.empty());
  CHECK(spectral_pairs_in_M2(28).pairs.empty());
  for (long long m = 3; m <= 31; m += 2) {
    const auto family = spectral_pairs_in_M2(m);
    CHECK(family.pairs.empty());
    CHECK(!family.note.empty());
  }
}

TEST_CASE("construction for M = 2^alpha q") {
  const auto c35 = construct_case_prime_power_times_q(3, 5);
  REQUIRE(c35.size() == 1);
  CHECK(c35[0].a == 25);   // 5^2
  CHECK(c35[0].b == 32);   // 2^5
  CHECK(c35[0].u == 0);    // 4 < 5 < 8

  const auto c23 = construct_case_prime_power_times_q(2, 3);
  REQUIRE(c23.size() == 1);
  CHECK(c23[0].a == 9);
  CHECK(c23[0].b == 8);

  CHECK(construct_case_prime_power_times_q(2, 5).empty());
  CHECK(construct_case_prime_power_times_q(2, 7).empty());

  const auto c33 = construct_case_prime_power_times_q(3, 3);
  REQUIRE(c33.size() == 1);
  CHECK(c33[0].a == 18);
  CHECK(c33[0].b == 16);
  CHECK(c33[0].u == 1);

  CHECK_THROWS_AS(construct_case_prime_power_times_q(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(construct_case_prime_power_times_q(0, 3), std::invalid_argument);
}

TEST_CASE("construction for squarefree even M") {
  const auto small = construct_case_squarefree({3, 5}, {3}, {}, {5});
  CHECK(small.accepted);
  CHECK(small.a == 18);
  CHECK(small.b == 25);
  CHECK(small.modulus == 30);

  const auto swapped = construct_case_squarefree({3, 5}, {5}, {}, {3});
  CHECK_FALSE(swapped.accepted);
  CHECK(!swapped.rejection.empty());

  const auto middle = construct_case_squarefree({3, 5}, {}, {3}, {5});
  CHECK_FALSE(middle.accepted);  // 1 < 5 < 2 fails

  const auto big = construct_case_squarefree({11, 13, 17, 19}, {11, 17}, {}, {13, 19});
  CHECK(big.accepted);
  CHECK(big.a == 69938);   // 2 * 11^2 * 17^2
  CHECK(big.b == 61009);   // 13^2 * 19^2
  CHECK(big.modulus == 92378);
  CHECK(BigInt(2) * big.a * big.b == BigInt(big.modulus) * big.modulus);
  CHECK(is_spectral_pair({0, big.a}, {0, big.b}, big.modulus * big.modulus));

  CHECK_THROWS_AS(construct_case_squarefree({3, 5}, {3}, {}, {3, 5}), std::invalid_argument);
  CHECK_THROWS_AS(construct_case_squarefree({3, 5}, {3}, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(construct_case_squarefree({3, 4}, {3}, {}, {4}), std::invalid_argument);
}

TEST_CASE("constructions and enumeration agree on matching modulus shapes") {
  // M = 2^alpha q shapes.
  for (const auto& [alpha, q] : std::vector<std::pair<int, long long>>{{2, 3}, {3, 3}, {3, 5}, {2, 5}, {4, 3}}) {
    const long long m = checked_pow(2, alpha) * q;
    const auto family = spectral_pairs_in_M2(m);
    std::set<std::pair<long long, long long>> enumerated;
    for (const auto& p : family.pairs) enumerated.insert({p.a, p.b});
    std::set<std::pair<long long, long long>> constructed;
    for (const auto& c : construct_case_prime_power_times_q(alpha, q)) {
      constructed.insert({c.a, c.b});
      constructed.insert({c.b, c.a});
    }
    CHECK(enumerated == constructed);
    for (const auto& p : family.pairs) CHECK(p.provenance == "constructed-case-1");
  }

  // Squarefree shape M = 2*3*5: all partitions on one side, enumeration on the other.
  const auto family30 = spectral_pairs_in_M2(30);
  std::set<std::pair<long long, long long>> enumerated30;
  for (const auto& p : family30.pairs) enumerated30.insert({p.a, p.b});
  std::set<std::pair<long long, long long>> constructed30;
  const std::vector<long long> primes{3, 5};
  for (int mask0 = 0; mask0 < 9; ++mask0) {
    std::set<long long> s0, s1, s2;
    int code = mask0;
    for (long long p : primes) {
      (code % 3 == 0 ? s0 : code % 3 == 1 ? s1 : s2).insert(p);
      code /= 3;
    }
    const auto result = construct_case_squarefree(primes, s0, s1, s2);
    if (result.accepted) {
      constructed30.insert({result.a, result.b});
      constructed30.insert({result.b, result.a});
    }
  }
  CHECK(enumerated30 == constructed30);
}

TEST_CASE("exhaustive search matches the exact-predicate brute force at small M") {
  for (long long m : {4, 6, 8, 9}) {
    std::vector<int> sizes;
    for (int s = 2; s < m; ++s) sizes.push_back(s);
    const auto report = search_dsp(m, sizes, {});
    const auto reference = brute_force_dsp(m, sizes);
    REQUIRE(report.pairs.size() == reference.size());
    for (size_t i = 0; i < reference.size(); ++i) {
      CHECK(report.pairs[i].a == reference[i].first);
      CHECK(report.pairs[i].b == reference[i].second);
    }
  }
}

TEST_CASE("classification of Z_12: one non-spectral duality class") {
  const auto report = search_dsp(12, {2, 3, 4, 5, 6}, {});
  int zm = 0, zm2_only = 0, other = 0;
  const ClassifiedPair* exceptional = nullptr;
  for (const auto& p : report.pairs) {
    switch (p.tag) {
      case PairTag::spectral_in_zm: ++zm; break;
      case PairTag::spectral_in_zm2_only:
        ++zm2_only;
        exceptional = &p;
        break;
      case PairTag::other_dsp: ++other; break;
    }
    CHECK(p.conjecture_consistent);
    CHECK(p.a.front() == 0);  // canonical representatives
    CHECK(p.b.front() == 0);
    CHECK(p.a <= p.b);
    CHECK(p.verdict.distributed_spectral);
  }
  CHECK(zm == 100);
  CHECK(zm2_only == 1);
  CHECK(other == 0);
  REQUIRE(exceptional != nullptr);
  CHECK(exceptional->a == std::vector<long long>{0, 8});
  CHECK(exceptional->b == std::vector<long long>{0, 9});
  CHECK_FALSE(exceptional->self_dual);
}

TEST_CASE("classification of prime powers and two-prime products stays spectral") {
  const auto all_sizes = [](long long m) {
    std::vector<int> sizes;
    for (int s = 2; s < m; ++s) sizes.push_back(s);
    return sizes;
  };
  for (long long m : {4, 8, 9, 16}) {
    const auto report = search_dsp(m, all_sizes(m), {});
    CHECK(!report.pairs.empty());
    for (const auto& p : report.pairs) CHECK(p.tag == PairTag::spectral_in_zm);
  }
  for (long long m : {6, 10, 15}) {
    const auto report = search_dsp(m, all_sizes(m), {});
    CHECK(!report.pairs.empty());
    for (const auto& p : report.pairs) CHECK(p.tag == PairTag::spectral_in_zm);
  }
}

TEST_CASE("search is independent of the thread count") {
  SearchOptions one;
  one.threads = 1;
  SearchOptions two;
  two.threads = 2;
  const auto r1 = search_dsp(12, {2, 3, 4}, one);
  const auto r2 = search_dsp(12, {2, 3, 4}, two);
  REQUIRE(r1.pairs.size() == r2.pairs.size());
  for (size_t i = 0; i < r1.pairs.size(); ++i) {
    CHECK(r1.pairs[i].a == r2.pairs[i].a);
    CHECK(r1.pairs[i].b == r2.pairs[i].b);
    CHECK(r1.pairs[i].tag == r2.pairs[i].tag);
  }
}

TEST_CASE("search budget guard") {
  SearchOptions tiny;
  tiny.pair_budget = 10;
  CHECK_THROWS_AS(search_dsp(12, {2, 3, 4, 5, 6}, tiny), feasibility_error);
  tiny.force = true;
  const auto forced = search_dsp(4, {2}, tiny);  // beyond budget but forced
  CHECK(!forced.pairs.empty());
}

TEST_CASE("spectral pairs in Z_{M^2} have exactly two elements (exhaustive, M <= 16)") {
  // Translation invariance reduces the check to canonical pairs with
  // 0 in A and B. For each A the admissible positive differences of B are
  // read off the zero set of A at denominator M^2; B is grown over that
  // difference graph, so the full pair space never has to be materialized.
  for (long long m = 3; m <= 16; ++m) {
    const long long m2 = m * m;
    std::vector<std::vector<long long>> all_sets;
    std::vector<long long> comb;
    const std::function<void(long long)> rec = [&](long long next) {
      if (comb.size() >= 1) {
        std::vector<long long> s{0};
        s.insert(s.end(), comb.begin(), comb.end());
        all_sets.push_back(s);
      }
      for (long long d = next; d < m; ++d) {
        comb.push_back(d);
        rec(d + 1);
        comb.pop_back();
      }
    };
    rec(1);

    long long found_pairs = 0;
    for (const auto& a_set : all_sets) {
      const auto zeros = vanishing_set(a_set, m2);
      std::vector<long long> admissible;  // d in [1, M) with nu_hat_A(d/M^2) = 0
      for (long long d = 1; d < m; ++d)
        if (zeros[static_cast<size_t>(d)]) admissible.push_back(d);
      if (admissible.empty()) continue;

      // Grow candidate B sets whose pairwise differences are all admissible.
      // Elements are added in increasing order, so each new difference is
      // next - existing > 0; the difference to 0 is `next` itself.
      std::vector<std::vector<long long>> candidates;
      std::vector<long long> b{0};
      const std::function<void(size_t)> grow = [&](size_t idx) {
        if (b.size() >= 2) candidates.push_back(b);
        for (size_t i = idx; i < admissible.size(); ++i) {
          const long long next = admissible[i];
          bool ok = true;
          for (long long existing : b)
            if (existing != 0 &&
                !std::binary_search(admissible.begin(), admissible.end(), next - existing)) {
              ok = false;
              break;
            }
          if (!ok) continue;
          b.push_back(next);
          grow(i + 1);
          b.pop_back();
        }
      };
      grow(0);

      for (const auto& b_set : candidates) {
        if (b_set.size() != a_set.size()) continue;  // unequal sizes are never spectral
        if (is_spectral_pair(a_set, b_set, m2)) {
          ++found_pairs;
          CHECK(a_set.size() == 2);
          CHECK(b_set.size() == 2);
        }
      }
    }
    // Cross-check the two-element census against the divisor enumeration.
    long long family_count = 0;
    if (m % 2 == 0) family_count = static_cast<long long>(spectral_pairs_in_M2(m).pairs.size());
    CHECK(found_pairs == family_count);
  }
}

TEST_CASE("product-form family with digits beyond the base range") {
  const auto ex3 = product_form_example(3);
  CHECK(ex3.modulus == 24);
  CHECK(ex3.a == std::vector<long long>{0, 1, 16, 17});
  CHECK(ex3.b == std::vector<long long>{0, 18, 36, 54});
  CHECK(ex3.verdict.distributed_spectral);
  CHECK_FALSE(ex3.verdict.spectral_in_m);
  CHECK_FALSE(ex3.verdict.spectral_in_m2);

  const auto ex5 = product_form_example(5);
  CHECK(ex5.modulus == 40);
  CHECK(ex5.b == std::vector<long long>{0, 50, 100, 150});
  CHECK(ex5.verdict.distributed_spectral);

  CHECK_THROWS_AS(product_form_example(1), std::invalid_argument);
  CHECK_THROWS_AS(product_form_example(4), std::invalid_argument);
}

TEST_CASE("the three alphabets divisible by the order-18 cyclotomic") {
  const IntPolynomial& phi18 = cyclotomic_poly(18);
  for (const auto& a_set : std::vector<std::vector<long long>>{
           {0, 9}, {0, 1, 9, 10}, {0, 1, 2, 9, 10, 11}}) {
    CHECK(divides(phi18, mask_polynomial(a_set)));
  }
  CHECK_FALSE(divides(phi18, mask_polynomial({0, 1, 2, 3})));
}

TEST_SUITE_END();
