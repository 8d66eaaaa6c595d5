#pragma once

/* Gram matrices of iterated DFT submatrices, their operator norms (dense
 * eigensolve or matrix-free power iteration), finite-k exponent estimates,
 * and the exponential-witness lower bound on the squared norm. */

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fup/cantor.hpp"

namespace fup {

struct NormOptions {
  /* Dimensions strictly below this use a dense Hermitian eigensolve;
   * everything else goes matrix-free. */
  long long dense_limit = 4096;
  /* Relative Rayleigh-quotient tolerance for the power iteration. */
  double tol = 1e-10;
  long long max_iterations = 100000;
  int threads = 1;
  /* Budget for the difference-kernel lookup table of the matrix-free path. */
  long long table_limit = 1LL << 24;
  /* Hard cap on |B|^k for any norm computation. */
  long long dim_limit = 1LL << 16;
};

/* Gram matrix F_k of H_k = 1_{A_k} F_{M^k} 1_{B_k}: Hermitian, positive
 * semidefinite, with entry(b, b') = (|A|/M)^k prod_{j=1..k}
 * nu_hat_A((b - b')/M^j). Rows and columns are indexed by the digit tuples
 * of B_k ordered lexicographically with the M^0 digit most significant, so
 * tuples sharing their first digit occupy contiguous index blocks. */
struct GramMatrix {
  int k = 0;
  long long dim = 0;
  Eigen::MatrixXcd mat;
};

/* One Gram entry from the digit tuples of b and b' (length k each, digits
 * of B). Every factor's argument is reduced modulo 1 in exact integer
 * arithmetic before evaluation. */
std::complex<double> gram_entry(const Alphabet& a, const Alphabet& b, int k,
                                std::span<const long long> b_tuple,
                                std::span<const long long> bp_tuple);

/* Fully materialized F_k; requires |B|^k <= options.dense_limit. The upper
 * triangle is computed and mirrored, so Hermitian symmetry is exact. */
GramMatrix build_gram(const Alphabet& a, const Alphabet& b, int k,
                      const NormOptions& options = {});

/* Largest singular value of H_k. Dense Hermitian eigensolve when
 * |B|^k < options.dense_limit, otherwise matrix-free power iteration on
 * F_k with a deterministic all-ones start (seed 0x5EED restart if that
 * start is annihilated). Convergence requires three consecutive Rayleigh
 * quotients within relative tol; exceeding max_iterations throws
 * convergence_error with the last two quotients. */
double submatrix_norm(const Alphabet& a, const Alphabet& b, int k,
                      const NormOptions& options = {});

struct NormRow {
  int k = 0;
  double norm = 0.0;
  /* norm * M^{k(1-delta)/2}; present when |A| == |B|. */
  std::optional<double> rescaled;
  /* -log(norm) / (k log M); present when |A| == |B|. */
  std::optional<double> beta;
};

struct NormSequence {
  std::vector<NormRow> rows;
  double delta_a = 0.0;
  double delta_b = 0.0;
  /* (1 - delta)/2, the most uncertain exponent; present when |A| == |B|. */
  std::optional<double> most_uncertain;
  /* Set when some k failed; rows then holds the completed prefix. */
  std::optional<std::string> error;
};

NormSequence beta_sequence(const Alphabet& a, const Alphabet& b, int k_max,
                           const NormOptions& options = {});

/* Certified lower bound on submatrix_norm(a, b, 2k)^2: the squared image
 * norm of the unit exponential witness built from k repetitions of the
 * digit pair (b1p, b2p) of B, evaluated by enumerating B_{2k}.
 * Requires |B|^{2k} <= 10^6 and b1p, b2p to be digits of B. */
double witness_lower_bound(const Alphabet& a, const Alphabet& b, int k,
                           long long b1p, long long b2p,
                           const NormOptions& options = {});

}  // namespace fup
