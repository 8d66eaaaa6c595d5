#include "fup/classify.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "fup/cantor.hpp"
#include "fup/errors.hpp"
#include "fup/numeric.hpp"
#include "fup/omega.hpp"
#include "fup/parallel.hpp"

namespace fup {

namespace {

std::string pair_to_string(long long a, long long b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

void verify_m2_pair(long long m, long long a, long long b) {
  const std::vector<long long> a_set{0, a};
  const std::vector<long long> b_set{0, b};
  if (!is_spectral_pair(a_set, b_set, m * m))
    throw verification_error("spectral_pairs_in_M2: enumerated pair " + pair_to_string(a, b) +
                             " failed the spectral-pair check in Z_{M^2}, M=" + std::to_string(m));
  if (!is_distributed_spectral_pair(a_set, b_set, m))
    throw verification_error("spectral_pairs_in_M2: enumerated pair " + pair_to_string(a, b) +
                             " failed the distributed-spectral check in Z_M, M=" + std::to_string(m));
}

/* Labels enumerated pairs that one of the structured constructions for the
 * modulus shape reproduces (in either orientation). */
void attach_provenance(M2PairFamily& family) {
  const long long m = family.modulus;
  if (m % 2 != 0) return;
  const auto factors = factorize(m);

  std::vector<std::pair<long long, long long>> constructed;
  std::string label;

  if (factors.size() == 2 && factors[0].first == 2 && factors[1].second == 1) {
    /* M = 2^alpha q, q an odd prime. */
    label = "constructed-case-1";
    for (const auto& p : construct_case_prime_power_times_q(factors[0].second, factors[1].first))
      constructed.emplace_back(p.a, p.b);
  } else if (factors[0].first == 2 && factors[0].second == 1 && factors.size() >= 2 &&
             std::all_of(factors.begin() + 1, factors.end(),
                         [](const auto& f) { return f.second == 1; })) {
    /* M = 2 p_1 ... p_r, squarefree with distinct odd primes. */
    label = factors.size() == 3 ? "constructed-case-3" : "constructed-case-2";
    std::vector<long long> primes;
    for (size_t i = 1; i < factors.size(); ++i) primes.push_back(factors[i].first);
    const size_t r = primes.size();
    std::vector<int> assign(r, 0);
    while (true) {
      std::set<long long> s0, s1, s2;
      for (size_t i = 0; i < r; ++i)
        (assign[i] == 0 ? s0 : assign[i] == 1 ? s1 : s2).insert(primes[i]);
      const auto result = construct_case_squarefree(primes, s0, s1, s2);
      if (result.accepted) constructed.emplace_back(result.a, result.b);
      size_t i = 0;
      while (i < r && ++assign[i] == 3) assign[i++] = 0;
      if (i == r) break;
    }
  } else {
    return;
  }

  for (auto& entry : family.pairs)
    for (const auto& [ca, cb] : constructed)
      if ((entry.a == ca && entry.b == cb) || (entry.a == cb && entry.b == ca))
        entry.provenance = label;
}

}  // namespace

M2PairFamily spectral_pairs_in_M2(long long m_modulus) {
  if (m_modulus < 2) throw std::invalid_argument("spectral_pairs_in_M2: M must be at least 2");
  M2PairFamily family;
  family.modulus = m_modulus;
  if (m_modulus % 2 != 0) {
    family.note = "2ab = M^2 has an even left-hand side, so an odd modulus admits no pairs";
    return family;
  }
  const long long target = m_modulus * m_modulus / 2;  // a*b
  for (long long a = 1; a < m_modulus; ++a) {
    if (target % a != 0) continue;
    const long long b = target / a;
    if (b < 1 || b >= m_modulus) continue;
    verify_m2_pair(m_modulus, a, b);
    family.pairs.push_back({a, b, "enumerated"});
  }
  std::sort(family.pairs.begin(), family.pairs.end(),
            [](const M2Pair& x, const M2Pair& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  attach_provenance(family);
  return family;
}

std::vector<PrimePowerCasePair> construct_case_prime_power_times_q(int alpha, long long q) {
  if (alpha < 1) throw std::invalid_argument("construct_case_prime_power_times_q: alpha must be >= 1");
  if (q < 3 || q % 2 == 0 || !is_prime(q))
    throw std::invalid_argument("construct_case_prime_power_times_q: q must be an odd prime");
  std::vector<PrimePowerCasePair> out;
  for (int u = 0; u < alpha; ++u) {
    const long long lower = checked_pow(2, alpha - u - 1);
    const long long upper = checked_pow(2, alpha - u);
    if (lower < q && q < upper)
      out.push_back({checked_pow(2, u) * q * q, checked_pow(2, 2 * alpha - u - 1), u});
  }
  return out;
}

SquarefreeCaseResult construct_case_squarefree(const std::vector<long long>& primes,
                                               const std::set<long long>& s0,
                                               const std::set<long long>& s1,
                                               const std::set<long long>& s2) {
  SquarefreeCaseResult result;
  std::set<long long> prime_set(primes.begin(), primes.end());
  if (prime_set.size() != primes.size())
    throw std::invalid_argument("construct_case_squarefree: primes must be distinct");
  for (long long p : primes)
    if (p < 3 || p % 2 == 0 || !is_prime(p))
      throw std::invalid_argument("construct_case_squarefree: all primes must be odd primes");
  std::set<long long> united;
  united.insert(s0.begin(), s0.end());
  united.insert(s1.begin(), s1.end());
  united.insert(s2.begin(), s2.end());
  if (united != prime_set || s0.size() + s1.size() + s2.size() != primes.size())
    throw std::invalid_argument("construct_case_squarefree: S0, S1, S2 must partition the primes");

  long long p0 = 1, p1 = 1, p2 = 1, all = 1;
  for (long long p : s0) p0 *= p;
  for (long long p : s1) p1 *= p;
  for (long long p : s2) p2 *= p;
  for (long long p : primes) all *= p;
  result.modulus = 2 * all;
  result.a = 2 * p0 * p0 * p1;
  result.b = p1 * p2 * p2;

  if (p0 >= p2) {
    result.rejection = "size condition failed: prod(S0) = " + std::to_string(p0) +
                       " must be < prod(S2) = " + std::to_string(p2);
    return result;
  }
  if (p2 >= 2 * p0) {
    result.rejection = "size condition failed: prod(S2) = " + std::to_string(p2) +
                       " must be < 2 prod(S0) = " + std::to_string(2 * p0);
    return result;
  }
  result.accepted = true;
  if (2 * result.a * result.b != result.modulus * result.modulus)
    throw verification_error("construct_case_squarefree: 2ab != M^2 for an accepted pair");
  return result;
}

const char* to_string(PairTag tag) {
  switch (tag) {
    case PairTag::spectral_in_zm: return "spectral-in-Z_M";
    case PairTag::spectral_in_zm2_only: return "spectral-in-Z_M2-only";
    case PairTag::other_dsp: return "other-DSP";
  }
  return "?";
}

namespace {

/* Canonical sets of one size: every subset of {0,...,M-1} of that size
 * containing 0, digits ascending, in lexicographic order. */
std::vector<std::vector<long long>> canonical_sets(long long m, int size) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> comb(static_cast<size_t>(size - 1));
  for (int i = 0; i < size - 1; ++i) comb[static_cast<size_t>(i)] = i + 1;
  if (size - 1 > m - 1) return out;
  while (true) {
    std::vector<long long> set{0};
    set.insert(set.end(), comb.begin(), comb.end());
    out.push_back(std::move(set));
    int i = size - 2;
    while (i >= 0 && comb[static_cast<size_t>(i)] == m - (size - 1) + i) --i;
    if (i < 0) break;
    ++comb[static_cast<size_t>(i)];
    for (int j = i + 1; j < size - 1; ++j)
      comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
  }
  return out;
}

struct SetMasks {
  uint64_t diff_mask = 0;  // bit d, d in [1, M): some b - b' == d
  uint64_t eb_mask = 0;    // bit e, e in [0, M): some (b2 - b2') mod M == e
};

SetMasks set_masks(const std::vector<long long>& digits, long long m) {
  SetMasks masks;
  for (long long x : digits)
    for (long long y : digits) {
      if (x > y) masks.diff_mask |= 1ULL << (x - y);
      masks.eb_mask |= 1ULL << floor_mod(x - y, m);
    }
  return masks;
}

struct ZeroMasks {
  bool prunable = false;   // no vanishing point at denominator M or M^2
  uint64_t zm_mask = 0;    // bit d: nu_hat_A(d/M) == 0
  uint64_t zm2_mask = 0;   // bit d: nu_hat_A(d/M^2) == 0 (d in [1, M))
  std::vector<uint64_t> second_ok;  // [d] -> bits e: nu_hat_A((d + M e)/M^2) == 0
};

ZeroMasks zero_masks(const std::vector<long long>& digits, long long m) {
  const long long m2 = m * m;
  const std::vector<char> zeros = vanishing_set(digits, m2);
  ZeroMasks out;
  out.second_ok.assign(static_cast<size_t>(m), 0);
  for (long long d = 1; d < m; ++d) {
    if (zeros[static_cast<size_t>(m * d)]) out.zm_mask |= 1ULL << d;
    if (zeros[static_cast<size_t>(d)]) out.zm2_mask |= 1ULL << d;
    uint64_t mask = 0;
    for (long long e = 0; e < m; ++e)
      if (zeros[static_cast<size_t>((d + m * e) % m2)]) mask |= 1ULL << e;
    out.second_ok[static_cast<size_t>(d)] = mask;
  }
  out.prunable = out.zm_mask == 0 && out.zm2_mask == 0;
  return out;
}

/* Distributed-spectral test through the precomputed masks. Scanning the
 * positive differences suffices: the verdict at -d equals the verdict at d
 * because the zero set is symmetric under conjugation and eb_mask is
 * invariant under e <-> M - e. */
bool masked_dsp(const ZeroMasks& za, const SetMasks& sb, long long m) {
  uint64_t todo = sb.diff_mask;
  while (todo) {
    const int d = std::countr_zero(todo);
    todo &= todo - 1;
    if (za.zm_mask & (1ULL << d)) continue;
    if ((sb.eb_mask & ~za.second_ok[static_cast<size_t>(d)]) != 0) return false;
  }
  return true;
}

}  // namespace

long long search_space_size(long long m_modulus, const std::vector<int>& sizes) {
  BigInt total = 0;
  for (int s : sizes) {
    if (s <= 1 || s >= m_modulus) continue;
    const BigInt count = binomial(m_modulus - 1, s - 1);
    total += count * count;
  }
  static const BigInt kMax = std::numeric_limits<long long>::max();
  return total > kMax ? std::numeric_limits<long long>::max() : static_cast<long long>(total);
}

ClassificationReport search_dsp(long long m_modulus, std::vector<int> sizes,
                                const SearchOptions& options) {
  if (m_modulus < 3) throw std::invalid_argument("search_dsp: M must be at least 3");
  if (m_modulus > 63)
    throw feasibility_error("search_dsp: moduli beyond 63 exceed the mask-based search design");
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  std::erase_if(sizes, [&](int s) { return s <= 1 || s >= m_modulus; });

  ClassificationReport report;
  report.modulus = m_modulus;
  report.sizes = sizes;

  const long long space = search_space_size(m_modulus, sizes);
  if (space > options.pair_budget && !options.force)
    throw feasibility_error("search_dsp: candidate space of " + std::to_string(space) +
                            " ordered pairs exceeds the budget of " +
                            std::to_string(options.pair_budget) + " (use force to override)");

  for (int size : sizes) {
    const auto sets = canonical_sets(m_modulus, size);
    const long long n = static_cast<long long>(sets.size());
    report.stats.candidate_a_sets += n;

    std::vector<SetMasks> masks(sets.size());
    std::vector<ZeroMasks> zeros(sets.size());
    detail::parallel_for(n, options.threads, [&](long long begin, long long end) {
      for (long long i = begin; i < end; ++i) {
        masks[static_cast<size_t>(i)] = set_masks(sets[static_cast<size_t>(i)], m_modulus);
        zeros[static_cast<size_t>(i)] = zero_masks(sets[static_cast<size_t>(i)], m_modulus);
      }
    });

    long long pruned = 0;
    for (const auto& z : zeros)
      if (z.prunable) ++pruned;
    report.stats.pruned_a_sets += pruned;

    /* Ordered scan, sharded over A. The per-shard hit lists are merged in
     * shard order, so the result is independent of the thread count. */
    std::vector<std::vector<std::pair<long long, long long>>> shard_hits(
        static_cast<size_t>(std::max(1, options.threads)));
    std::vector<long long> shard_tested(shard_hits.size(), 0);
    const long long chunk = (n + static_cast<long long>(shard_hits.size()) - 1) /
                            static_cast<long long>(shard_hits.size());
    detail::parallel_for(n, options.threads, [&](long long begin, long long end) {
      const size_t shard = static_cast<size_t>(chunk > 0 ? begin / chunk : 0);
      for (long long i = begin; i < end; ++i) {
        const ZeroMasks& za = zeros[static_cast<size_t>(i)];
        if (za.prunable) continue;
        for (long long j = 0; j < n; ++j) {
          ++shard_tested[shard];
          if (masked_dsp(za, masks[static_cast<size_t>(j)], m_modulus))
            shard_hits[shard].emplace_back(i, j);
        }
      }
    });

    std::vector<std::pair<long long, long long>> hits;
    for (size_t s = 0; s < shard_hits.size(); ++s) {
      hits.insert(hits.end(), shard_hits[s].begin(), shard_hits[s].end());
      report.stats.pairs_tested += shard_tested[s];
    }
    report.stats.dsp_pairs_found += static_cast<long long>(hits.size());

    /* The ordered hit set must be closed under (A, B) <-> (B, A); a gap
     * would contradict the duality of the uncertainty exponent. */
    std::set<std::pair<long long, long long>> hit_set(hits.begin(), hits.end());
    for (const auto& [i, j] : hits)
      if (!hit_set.count({j, i}))
        throw verification_error("search_dsp: hit set is not closed under duality at M=" +
                                 std::to_string(m_modulus));

    for (const auto& [i, j] : hits) {
      if (i > j) continue;  // canonical representative: A <= B lexicographically
      ClassifiedPair entry;
      entry.a = sets[static_cast<size_t>(i)];
      entry.b = sets[static_cast<size_t>(j)];
      entry.self_dual = i == j;
      entry.verdict = evaluate_pair(entry.a, entry.b, m_modulus);
      if (!entry.verdict.distributed_spectral)
        throw verification_error(
            "search_dsp: mask-based scan and reference predicate disagree at M=" +
            std::to_string(m_modulus));
      entry.tag = entry.verdict.spectral_in_m
                      ? PairTag::spectral_in_zm
                      : (entry.verdict.spectral_in_m2 ? PairTag::spectral_in_zm2_only
                                                      : PairTag::other_dsp);
      entry.conjecture_consistent = entry.verdict.spectral_in_m || entry.verdict.spectral_in_m2;
      report.pairs.push_back(std::move(entry));
    }
  }

  std::sort(report.pairs.begin(), report.pairs.end(), [](const ClassifiedPair& x, const ClassifiedPair& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return report;
}

ProductFormExample product_form_example(long long m) {
  if (m <= 1 || m % 2 == 0)
    throw std::invalid_argument("product_form_example: m must be an odd integer larger than 1");
  ProductFormExample example;
  example.modulus = 8 * m;
  example.a = {0, 1, 16, 17};
  const long long b0 = 2 * m * m;
  example.b = {0, b0, 2 * b0, 3 * b0};
  example.verdict = evaluate_pair(example.a, example.b, example.modulus);
  if (!example.verdict.distributed_spectral || example.verdict.spectral_in_m ||
      example.verdict.spectral_in_m2)
    throw verification_error("product_form_example: verdict contradicts the expected pattern at m=" +
                             std::to_string(m));
  return example;
}

}  // namespace fup
