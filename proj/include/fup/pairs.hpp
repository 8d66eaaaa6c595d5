#pragma once

/* Exact predicates on alphabet pairs: spectral pair, distributed spectral
 * pair, and the weaker product condition on two consecutive scales, plus a
 * structural verifier for the block-diagonal Gram recursion. */

#include <optional>
#include <string>
#include <vector>

#include "fup/norms.hpp"

namespace fup {

/* First violating difference tuple in lexicographic (b1, b1p, b2, b2p)
 * order; the (b2, b2p) component is present only where the predicate has a
 * second-scale quantifier. */
struct PairWitness {
  long long b1 = 0;
  long long b1p = 0;
  std::optional<std::pair<long long, long long>> b2;
};

/* True iff nu_hat_A((b - b')/N) == 0 for all b != b' in B, i.e. the scaled
 * exponential matrix has mutually orthogonal columns. Pairs of unequal
 * cardinality return false with a reason. Rejects N <= 0. */
bool is_spectral_pair(const std::vector<long long>& a_set, const std::vector<long long>& b_set,
                      long long n_modulus, PairWitness* witness = nullptr,
                      std::string* reason = nullptr);

/* True iff for every ordered pair b1 != b1' in B, either
 * nu_hat_A((b1-b1')/M) == 0 or nu_hat_A((b1-b1' + M(b2-b2'))/M^2) == 0 for
 * every b2, b2' in B (one branch per (b1, b1'), uniformly over the second
 * scale). Membership of the digits in [0, M) is not required. Rejects
 * M < 3. */
bool is_distributed_spectral_pair(const std::vector<long long>& a_set,
                                  const std::vector<long long>& b_set, long long modulus,
                                  PairWitness* witness = nullptr);

/* True iff nu_hat_A((b-b')/M) * nu_hat_A((b-b')/M^2) == 0 for all b != b'
 * in B. Weaker than the distributed condition. Rejects M < 3. */
bool satisfies_two_scale_condition(const std::vector<long long>& a_set,
                            const std::vector<long long>& b_set, long long modulus,
                            PairWitness* witness = nullptr);

/* All four predicates on one pair, with witnesses for the false ones. */
struct PairVerdict {
  bool spectral_in_m = false;
  bool spectral_in_m2 = false;
  bool distributed_spectral = false;
  bool two_scale_condition = false;
  std::optional<PairWitness> spectral_in_m_witness;
  std::optional<PairWitness> spectral_in_m2_witness;
  std::optional<PairWitness> distributed_spectral_witness;
  std::optional<PairWitness> two_scale_condition_witness;
  std::string note;  // e.g. the unequal-cardinality reason
};

PairVerdict evaluate_pair(const std::vector<long long>& a_set,
                          const std::vector<long long>& b_set, long long modulus);

struct BlockStructureReport {
  int k = 0;
  double tol = 0.0;
  /* Max |entry| over the blocks with differing leading digit. */
  double off_diag_max = 0.0;
  /* Max |F_k block(d,d) - (|A|/M) F_{k-1}| over the diagonal blocks. */
  double diag_dev_max = 0.0;
  bool pass = false;
  /* Leading-digit pair and in-block position of the largest off-diagonal
   * entry, when one is nonzero. */
  struct Position {
    long long b1 = 0, b1p = 0;
    long long row = 0, col = 0;
  };
  std::optional<Position> off_diag_witness;
};

/* Partitions F_k by the leading (scale M^0) digit of the column tuples and
 * measures how far it is from the block-diagonal form (|A|/M) diag(F_{k-1},
 * ..., F_{k-1}). Passes iff both maxima are within tol. Requires k >= 3. */
BlockStructureReport verify_block_structure(const Alphabet& a, const Alphabet& b, int k,
                                            double tol, const NormOptions& options = {});

}  // namespace fup
