#include "fup/pairs.hpp"

#include <algorithm>
#include <stdexcept>

#include "fup/cantor.hpp"
#include "fup/errors.hpp"
#include "fup/numeric.hpp"

namespace fup {

namespace {

/* Witnesses are reported for the first violation in lexicographic
 * (b1, b1p, b2, b2p) value order, so predicates scan a sorted copy. */
std::vector<long long> sorted_copy(const std::vector<long long>& v) {
  std::vector<long long> s = v;
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

bool is_spectral_pair(const std::vector<long long>& a_set, const std::vector<long long>& b_set,
                      long long n_modulus, PairWitness* witness, std::string* reason) {
  if (n_modulus <= 0) throw std::invalid_argument("is_spectral_pair: modulus must be positive");
  if (a_set.empty() || b_set.empty())
    throw std::invalid_argument("is_spectral_pair: empty alphabet");
  if (a_set.size() != b_set.size()) {
    if (reason)
      *reason = "orthogonal columns of a square scaled matrix require |A| == |B| (" +
                std::to_string(a_set.size()) + " vs " + std::to_string(b_set.size()) + ")";
    return false;
  }
  const std::vector<long long> b_sorted = sorted_copy(b_set);
  for (long long b1 : b_sorted)
    for (long long b1p : b_sorted) {
      if (b1 == b1p) continue;
      if (!vanishes_at(a_set, Rational(b1 - b1p, n_modulus))) {
        if (witness) *witness = {b1, b1p, std::nullopt};
        return false;
      }
    }
  return true;
}

bool is_distributed_spectral_pair(const std::vector<long long>& a_set,
                                  const std::vector<long long>& b_set, long long modulus,
                                  PairWitness* witness) {
  if (modulus < 3)
    throw std::invalid_argument("is_distributed_spectral_pair: modulus must be at least 3");
  if (a_set.empty() || b_set.empty())
    throw std::invalid_argument("is_distributed_spectral_pair: empty alphabet");
  const long long m2 = modulus * modulus;
  const std::vector<long long> b_sorted = sorted_copy(b_set);
  for (long long b1 : b_sorted)
    for (long long b1p : b_sorted) {
      if (b1 == b1p) continue;
      if (vanishes_at(a_set, Rational(b1 - b1p, modulus))) continue;
      /* One branch per (b1, b1'): the second-scale zero must hold uniformly
       * over all (b2, b2'). */
      for (long long b2 : b_sorted)
        for (long long b2p : b_sorted) {
          if (vanishes_at(a_set, Rational((b1 - b1p) + modulus * (b2 - b2p), m2))) continue;
          if (witness) *witness = {b1, b1p, std::make_pair(b2, b2p)};
          return false;
        }
    }
  return true;
}

bool satisfies_two_scale_condition(const std::vector<long long>& a_set,
                            const std::vector<long long>& b_set, long long modulus,
                            PairWitness* witness) {
  if (modulus < 3)
    throw std::invalid_argument("satisfies_two_scale_condition: modulus must be at least 3");
  if (a_set.empty() || b_set.empty())
    throw std::invalid_argument("satisfies_two_scale_condition: empty alphabet");
  const long long m2 = modulus * modulus;
  const std::vector<long long> b_sorted = sorted_copy(b_set);
  for (long long b1 : b_sorted)
    for (long long b1p : b_sorted) {
      if (b1 == b1p) continue;
      if (vanishes_at(a_set, Rational(b1 - b1p, modulus))) continue;
      if (vanishes_at(a_set, Rational(b1 - b1p, m2))) continue;
      if (witness) *witness = {b1, b1p, std::nullopt};
      return false;
    }
  return true;
}

PairVerdict evaluate_pair(const std::vector<long long>& a_set,
                          const std::vector<long long>& b_set, long long modulus) {
  if (modulus < 3) throw std::invalid_argument("evaluate_pair: modulus must be at least 3");
  PairVerdict verdict;
  PairWitness w;
  std::string reason;

  verdict.spectral_in_m = is_spectral_pair(a_set, b_set, modulus, &w, &reason);
  if (!verdict.spectral_in_m && reason.empty()) verdict.spectral_in_m_witness = w;
  verdict.spectral_in_m2 = is_spectral_pair(a_set, b_set, modulus * modulus, &w, &reason);
  if (!verdict.spectral_in_m2 && reason.empty()) verdict.spectral_in_m2_witness = w;
  if (!reason.empty()) verdict.note = reason;

  verdict.distributed_spectral = is_distributed_spectral_pair(a_set, b_set, modulus, &w);
  if (!verdict.distributed_spectral) verdict.distributed_spectral_witness = w;
  verdict.two_scale_condition = satisfies_two_scale_condition(a_set, b_set, modulus, &w);
  if (!verdict.two_scale_condition) verdict.two_scale_condition_witness = w;
  return verdict;
}

BlockStructureReport verify_block_structure(const Alphabet& a, const Alphabet& b, int k,
                                            double tol, const NormOptions& options) {
  if (k < 3) throw std::invalid_argument("verify_block_structure: k must be at least 3");
  if (tol <= 0) throw std::invalid_argument("verify_block_structure: tol must be positive");

  const GramMatrix gram_k = build_gram(a, b, k, options);
  const GramMatrix gram_prev = build_gram(a, b, k - 1, options);
  const long long nb = b.size();
  const long long block = gram_prev.dim;  // |B|^{k-1}
  const double ratio = static_cast<double>(a.size()) / static_cast<double>(a.modulus);

  BlockStructureReport report;
  report.k = k;
  report.tol = tol;

  /* Row/column index r = i_0 |B|^{k-1} + rest, so the leading (scale M^0)
   * digit selects a contiguous block and `rest` indexes B_{k-1} tuples in
   * their own row order. */
  for (long long bi = 0; bi < nb; ++bi)
    for (long long bj = 0; bj < nb; ++bj) {
      if (bi == bj) {
        for (long long r = 0; r < block; ++r)
          for (long long c = 0; c < block; ++c) {
            const double dev = std::abs(gram_k.mat(bi * block + r, bj * block + c) -
                                        ratio * gram_prev.mat(r, c));
            report.diag_dev_max = std::max(report.diag_dev_max, dev);
          }
      } else {
        for (long long r = 0; r < block; ++r)
          for (long long c = 0; c < block; ++c) {
            const double mag = std::abs(gram_k.mat(bi * block + r, bj * block + c));
            if (mag > report.off_diag_max) {
              report.off_diag_max = mag;
              report.off_diag_witness = BlockStructureReport::Position{
                  b.digits[static_cast<size_t>(bi)], b.digits[static_cast<size_t>(bj)], r, c};
            }
          }
      }
    }

  report.pass = report.off_diag_max <= tol && report.diag_dev_max <= tol;
  return report;
}

}  // namespace fup
