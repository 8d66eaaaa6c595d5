#pragma once

/* Constructive enumeration of two-element spectral pairs in Z_{M^2} and
 * exhaustive classification of distributed spectral pairs in small cyclic
 * groups, with canonicalization under translation and duality. */

#include <set>
#include <string>
#include <vector>

#include "fup/pairs.hpp"

namespace fup {

/* --- spectral pairs ({0,a}, {0,b}) in Z_{M^2} ------------------------- */

struct M2Pair {
  long long a = 0;
  long long b = 0;
  /* "enumerated", or "constructed-case-1|2|3" when one of the structured
   * constructions for the matching modulus shape reproduces the pair. */
  std::string provenance = "enumerated";
};

struct M2PairFamily {
  long long modulus = 0;
  std::vector<M2Pair> pairs;  // ordered pairs, sorted by (a, b)
  std::string note;           // e.g. the parity reason when M is odd
};

/* All (a, b) with 0 < a, b < M and 2ab = M^2 (empty for odd M: the
 * left-hand side is even). Every emitted pair is re-verified as a spectral
 * pair in Z_{M^2} and a distributed spectral pair in Z_M; a verification
 * failure throws verification_error. */
M2PairFamily spectral_pairs_in_M2(long long m_modulus);

/* M = 2^alpha q, q an odd prime: all (a, b, u) with a = 2^u q^2,
 * b = 2^{2 alpha - u - 1} and 2^{alpha-u-1} < q < 2^{alpha-u}, 0 <= u <
 * alpha. Every emitted pair must appear in spectral_pairs_in_M2(2^alpha q). */
struct PrimePowerCasePair {
  long long a = 0;
  long long b = 0;
  int u = 0;
};
std::vector<PrimePowerCasePair> construct_case_prime_power_times_q(int alpha, long long q);

/* M = 2 p_1 ... p_r, distinct odd primes, partitioned into S0, S1, S2:
 * a = 2 (prod_{S0} p^2)(prod_{S1} p), b = (prod_{S1} p)(prod_{S2} p^2),
 * accepted iff prod_{S0} p < prod_{S2} p < 2 prod_{S0} p. */
struct SquarefreeCaseResult {
  bool accepted = false;
  long long a = 0;
  long long b = 0;
  long long modulus = 0;       // 2 * prod primes
  std::string rejection;       // which inequality failed, when rejected
};
SquarefreeCaseResult construct_case_squarefree(const std::vector<long long>& primes,
                                               const std::set<long long>& s0,
                                               const std::set<long long>& s1,
                                               const std::set<long long>& s2);

/* --- exhaustive classification ---------------------------------------- */

enum class PairTag {
  spectral_in_zm,        // spectral pair already in Z_M
  spectral_in_zm2_only,  // spectral in Z_{M^2} but not in Z_M
  other_dsp,             // distributed spectral without either (conjecture probe)
};

const char* to_string(PairTag tag);

struct ClassifiedPair {
  std::vector<long long> a;
  std::vector<long long> b;
  PairTag tag = PairTag::spectral_in_zm;
  /* False only for other_dsp entries: a distributed spectral pair that is
   * spectral in neither Z_M nor Z_{M^2}. Logged, never treated as an
   * internal failure: such a pair would be a finding. */
  bool conjecture_consistent = true;
  bool self_dual = false;  // the duality partner (B, A) equals (A, B)
  PairVerdict verdict;
};

struct SearchStats {
  long long candidate_a_sets = 0;
  long long pruned_a_sets = 0;  // no vanishing point at denominator M or M^2
  long long pairs_tested = 0;
  long long dsp_pairs_found = 0;  // ordered count, before duality dedup
};

struct ClassificationReport {
  long long modulus = 0;
  std::vector<int> sizes;
  std::vector<ClassifiedPair> pairs;  // canonical representatives, sorted
  SearchStats stats;
};

struct SearchOptions {
  int threads = 1;
  /* Upper bound on the number of (A, B) candidates; beyond it the search
   * refuses unless force is set. */
  long long pair_budget = 2000000000;
  bool force = false;
};

/* Exhaustive scan over canonical pairs A, B subset {0, ..., M-1} with
 * 0 in A and B, |A| = |B| in `sizes`, 1 < |A| < M. Zero sets of each A at
 * denominator M^2 are precomputed once and shared across all B. Reported
 * pairs are deduplicated under (A, B) <-> (B, A); the full ordered result
 * set is checked to be closed under that swap (a violation would
 * contradict the duality of the uncertainty exponent and throws
 * verification_error). */
ClassificationReport search_dsp(long long m_modulus, std::vector<int> sizes,
                                const SearchOptions& options = {});

/* Estimated number of ordered candidate pairs for the given search. */
long long search_space_size(long long m_modulus, const std::vector<int>& sizes);

/* --- structured example family ---------------------------------------- */

struct ProductFormExample {
  long long modulus = 0;  // 8m
  std::vector<long long> a;
  std::vector<long long> b;  // {0, b0, 2 b0, 3 b0} with b0 = 2 m^2, outside [0, M)
  PairVerdict verdict;
};

/* For odd m > 1: M = 8m, A = {0, 1, 16, 17}, B = {0, 2m^2, 4m^2, 6m^2}.
 * Verifies distributed spectral = true and spectral in Z_M, Z_{M^2} both
 * false; a mismatch throws verification_error. */
ProductFormExample product_form_example(long long m);

}  // namespace fup
