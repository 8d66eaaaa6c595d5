#include "fup/norms.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fup/errors.hpp"
#include "fup/numeric.hpp"
#include "fup/parallel.hpp"

namespace fup {

namespace {

/* nu_hat_A(delta / scale) with the phase of every term reduced modulo 1 in
 * integer arithmetic. Shared by the dense and matrix-free entry paths. */
std::complex<double> scale_factor(const std::vector<long long>& digits, long long delta,
                                  long long scale) {
  const long long c = floor_mod(delta, scale);
  std::complex<double> acc = 0.0;
  for (long long a : digits) {
    const long long r = mul_mod(c, floor_mod(a, scale), scale);
    const double phase =
        -2.0 * std::numbers::pi * (static_cast<double>(r) / static_cast<double>(scale));
    acc += std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc / static_cast<double>(digits.size());
}

/* prod_{j=1}^{k} nu_hat_A(delta / M^j); `scales` holds M^1..M^k. */
std::complex<double> scale_product(const std::vector<long long>& digits, long long delta,
                                   const std::vector<long long>& scales) {
  std::complex<double> prod = 1.0;
  for (long long s : scales) prod *= scale_factor(digits, delta, s);
  return prod;
}

std::vector<long long> scale_powers(long long modulus, int k) {
  std::vector<long long> scales(static_cast<size_t>(k));
  long long s = 1;
  for (int j = 0; j < k; ++j) {
    s = s * modulus;
    scales[static_cast<size_t>(j)] = s;
  }
  return scales;
}

/* Values of the digit tuples of B_k in row order: index
 * r = sum_j i_j |B|^{k-1-j} with i_j the digit index at place M^j, so the
 * M^0 digit is the most significant index position and tuples sharing it
 * form contiguous blocks. */
std::vector<long long> tuple_values_in_row_order(const Alphabet& b, int k, long long dim) {
  const long long nb = b.size();
  std::vector<long long> values(static_cast<size_t>(dim));
  std::vector<long long> place(static_cast<size_t>(k));  // M^j per tuple position
  long long s = 1;
  for (int j = 0; j < k; ++j) {
    place[static_cast<size_t>(j)] = s;
    s *= b.modulus;
  }
  for (long long r = 0; r < dim; ++r) {
    long long rest = r;
    long long value = 0;
    for (int j = k - 1; j >= 0; --j) {
      value += b.digits[static_cast<size_t>(rest % nb)] * place[static_cast<size_t>(j)];
      rest /= nb;
    }
    values[static_cast<size_t>(r)] = value;
  }
  return values;
}

double prefactor(const Alphabet& a, int k) {
  return std::pow(static_cast<double>(a.size()) / static_cast<double>(a.modulus), k);
}

/* Matrix-free representation of F_k / (|A|/M)^k. Entries depend only on
 * the per-place digit differences, so they are tabulated once over all
 * difference tuples and the matvec reduces to table lookups. */
class DiffKernel {
 public:
  DiffKernel(const Alphabet& a, const Alphabet& b, int k, const NormOptions& options)
      : k_(k), nb_(b.size()) {
    dim_ = 1;
    for (int i = 0; i < k; ++i) dim_ *= nb_;

    diffs_.clear();
    for (long long x : b.digits)
      for (long long y : b.digits) diffs_.push_back(x - y);
    std::sort(diffs_.begin(), diffs_.end());
    diffs_.erase(std::unique(diffs_.begin(), diffs_.end()), diffs_.end());
    u_ = static_cast<long long>(diffs_.size());

    long long table_size = 1;
    for (int i = 0; i < k; ++i) {
      table_size *= u_;
      if (table_size > options.table_limit)
        throw feasibility_error("matrix-free kernel table exceeds the configured budget");
    }

    pair_to_diff_.resize(static_cast<size_t>(nb_ * nb_));
    for (long long i = 0; i < nb_; ++i)
      for (long long j = 0; j < nb_; ++j) {
        const long long d = b.digits[static_cast<size_t>(i)] - b.digits[static_cast<size_t>(j)];
        const auto it = std::lower_bound(diffs_.begin(), diffs_.end(), d);
        pair_to_diff_[static_cast<size_t>(i * nb_ + j)] = it - diffs_.begin();
      }

    stride_.resize(static_cast<size_t>(k));
    long long s = 1;
    for (int j = k - 1; j >= 0; --j) {
      stride_[static_cast<size_t>(j)] = s;
      s *= u_;
    }

    place_.resize(static_cast<size_t>(k));
    long long m = 1;
    for (int j = 0; j < k; ++j) {
      place_[static_cast<size_t>(j)] = m;
      m *= b.modulus;
    }
    scales_ = scale_powers(b.modulus, k);

    table_.assign(static_cast<size_t>(table_size), std::complex<double>(0.0, 0.0));
    fill(a.digits, 0, 0, std::complex<double>(1.0, 0.0), 0);
  }

  long long dim() const { return dim_; }

  void matvec(const Eigen::VectorXcd& x, Eigen::VectorXcd& y, int threads) const {
    detail::parallel_for(dim_, threads, [&](long long begin, long long end) {
      std::vector<long long> col_contrib(static_cast<size_t>(k_ * nb_));
      std::vector<long long> digit(static_cast<size_t>(k_));
      std::vector<long long> prefix(static_cast<size_t>(k_));
      std::vector<long long> col_digit(static_cast<size_t>(k_));
      for (long long r = begin; r < end; ++r) {
        long long rest = r;
        for (int j = k_ - 1; j >= 0; --j) {
          digit[static_cast<size_t>(j)] = rest % nb_;
          rest /= nb_;
        }
        for (int j = 0; j < k_; ++j)
          for (long long i = 0; i < nb_; ++i)
            col_contrib[static_cast<size_t>(j * nb_ + i)] =
                pair_to_diff_[static_cast<size_t>(digit[static_cast<size_t>(j)] * nb_ + i)] *
                stride_[static_cast<size_t>(j)];

        std::fill(col_digit.begin(), col_digit.end(), 0);
        long long acc = 0;
        for (int j = 0; j + 1 < k_; ++j) {
          acc += col_contrib[static_cast<size_t>(j * nb_)];
          prefix[static_cast<size_t>(j)] = acc;
        }
        /* The last axis walks nb_ consecutive columns sharing one index
         * prefix, so the odometer only advances once per block. */
        const long long* last_contrib = col_contrib.data() + (k_ - 1) * nb_;
        std::complex<double> sum = 0.0;
        for (long long c = 0;;) {
          const long long base = k_ > 1 ? prefix[static_cast<size_t>(k_ - 2)] : 0;
          for (long long i = 0; i < nb_; ++i, ++c)
            sum += table_[static_cast<size_t>(base + last_contrib[i])] * x[c];
          if (c >= dim_) break;
          int axis = k_ - 2;
          while (++col_digit[static_cast<size_t>(axis)] == nb_) {
            col_digit[static_cast<size_t>(axis)] = 0;
            --axis;
          }
          long long step = axis > 0 ? prefix[static_cast<size_t>(axis - 1)] : 0;
          for (int j = axis; j + 1 < k_; ++j) {
            step += col_contrib[static_cast<size_t>(j * nb_ + col_digit[static_cast<size_t>(j)])];
            prefix[static_cast<size_t>(j)] = step;
          }
        }
        y[r] = sum;
      }
    });
  }

 private:
  /* Depth-first fill over difference tuples in place order. The factor at
   * scale M^{axis+1} depends only on the partial sum over places <= axis. */
  void fill(const std::vector<long long>& a_digits, int axis, long long partial,
            std::complex<double> prod, long long offset) {
    if (axis == k_) {
      table_[static_cast<size_t>(offset)] = prod;
      return;
    }
    for (long long t = 0; t < u_; ++t) {
      const long long partial2 = partial + diffs_[static_cast<size_t>(t)] * place_[static_cast<size_t>(axis)];
      const std::complex<double> prod2 =
          prod * scale_factor(a_digits, partial2, scales_[static_cast<size_t>(axis)]);
      fill(a_digits, axis + 1, partial2, prod2, offset + t * stride_[static_cast<size_t>(axis)]);
    }
  }

  int k_;
  long long nb_;
  long long dim_ = 0;
  long long u_ = 0;
  std::vector<long long> diffs_;
  std::vector<long long> pair_to_diff_;
  std::vector<long long> stride_;
  std::vector<long long> place_;
  std::vector<long long> scales_;
  std::vector<std::complex<double>> table_;
};

/* Power iteration on a PSD operator with deterministic start. Returns the
 * largest eigenvalue (Rayleigh limit). */
double power_iteration(const DiffKernel& kernel, const NormOptions& options) {
  const long long dim = kernel.dim();
  Eigen::VectorXcd x = Eigen::VectorXcd::Constant(dim, std::complex<double>(1.0, 0.0));
  x /= std::sqrt(static_cast<double>(dim));
  Eigen::VectorXcd y(dim);

  bool restarted = false;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double last = prev;
  int stagnant = 0;
  for (long long it = 0; it < options.max_iterations; ++it) {
    kernel.matvec(x, y, options.threads);
    const double rayleigh = x.dot(y).real();
    const double norm_y = y.norm();
    if (norm_y < 1e-250) {
      if (restarted)
        throw convergence_error("power iteration: operator annihilated both start vectors", prev, rayleigh);
      /* The start vector was orthogonal to the range; restart from the
       * fixed pseudo-random seed. */
      restarted = true;
      std::mt19937_64 rng(0x5EED);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (long long i = 0; i < dim; ++i) x[i] = std::complex<double>(dist(rng), dist(rng));
      x /= x.norm();
      prev = std::numeric_limits<double>::quiet_NaN();
      stagnant = 0;
      continue;
    }
    x = y / norm_y;
    if (std::isfinite(prev)) {
      const double denom = std::max(std::abs(rayleigh), 1e-300);
      if (std::abs(rayleigh - prev) <= options.tol * denom)
        ++stagnant;
      else
        stagnant = 0;
      if (stagnant >= 3) return rayleigh;
    }
    last = prev;
    prev = rayleigh;
  }
  throw convergence_error("power iteration did not converge within the iteration cap", last, prev);
}

}  // namespace

std::complex<double> gram_entry(const Alphabet& a, const Alphabet& b, int k,
                                std::span<const long long> b_tuple,
                                std::span<const long long> bp_tuple) {
  if (k < 1) throw std::invalid_argument("gram_entry: k must be at least 1");
  if (b_tuple.size() != static_cast<size_t>(k) || bp_tuple.size() != static_cast<size_t>(k))
    throw std::invalid_argument("gram_entry: tuples must have length k");
  checked_pow(a.modulus, k);
  long long delta = 0;
  long long place = 1;
  for (int j = 0; j < k; ++j) {
    delta += (b_tuple[static_cast<size_t>(j)] - bp_tuple[static_cast<size_t>(j)]) * place;
    place *= a.modulus;
  }
  return prefactor(a, k) * scale_product(a.digits, delta, scale_powers(a.modulus, k));
}

GramMatrix build_gram(const Alphabet& a, const Alphabet& b, int k, const NormOptions& options) {
  if (k < 1) throw std::invalid_argument("build_gram: k must be at least 1");
  if (a.modulus != b.modulus)
    throw std::invalid_argument("build_gram: alphabets must share the modulus");
  checked_pow(a.modulus, k);
  long long dim = 1;
  for (int i = 0; i < k; ++i) {
    dim *= b.size();
    if (dim > options.dense_limit)
      throw feasibility_error("build_gram: |B|^k exceeds the dense limit; use the matrix-free path");
  }

  const std::vector<long long> values = tuple_values_in_row_order(b, k, dim);
  const std::vector<long long> scales = scale_powers(a.modulus, k);
  const double pref = prefactor(a, k);

  GramMatrix gram;
  gram.k = k;
  gram.dim = dim;
  gram.mat.resize(dim, dim);
  detail::parallel_for(dim, options.threads, [&](long long begin, long long end) {
    for (long long r = begin; r < end; ++r) {
      gram.mat(r, r) = pref;
      for (long long c = r + 1; c < dim; ++c)
        gram.mat(r, c) =
            pref * scale_product(a.digits, values[static_cast<size_t>(r)] - values[static_cast<size_t>(c)], scales);
    }
  });
  for (long long r = 0; r < dim; ++r)
    for (long long c = 0; c < r; ++c) gram.mat(r, c) = std::conj(gram.mat(c, r));
  return gram;
}

double submatrix_norm(const Alphabet& a, const Alphabet& b, int k, const NormOptions& options) {
  if (k < 1) throw std::invalid_argument("submatrix_norm: k must be at least 1");
  if (a.modulus != b.modulus)
    throw std::invalid_argument("submatrix_norm: alphabets must share the modulus");
  checked_pow(a.modulus, k);
  long long dim = 1;
  for (int i = 0; i < k; ++i) {
    dim *= b.size();
    if (dim > options.dim_limit)
      throw feasibility_error("submatrix_norm: |B|^k exceeds the dimension cap");
  }

  if (dim < options.dense_limit) {
    const GramMatrix gram = build_gram(a, b, k, options);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram.mat, Eigen::EigenvaluesOnly);
    const double top = solver.eigenvalues().maxCoeff();
    return std::sqrt(std::max(top, 0.0));
  }

  const DiffKernel kernel(a, b, k, options);
  const double top = power_iteration(kernel, options) * prefactor(a, k);
  return std::sqrt(std::max(top, 0.0));
}

NormSequence beta_sequence(const Alphabet& a, const Alphabet& b, int k_max,
                           const NormOptions& options) {
  if (k_max < 1) throw std::invalid_argument("beta_sequence: k_max must be at least 1");
  NormSequence seq;
  seq.delta_a = a.delta();
  seq.delta_b = b.delta();
  const bool equal_sizes = a.size() == b.size();
  if (equal_sizes) seq.most_uncertain = (1.0 - a.delta()) / 2.0;

  const double log_m = std::log(static_cast<double>(a.modulus));
  for (int k = 1; k <= k_max; ++k) {
    NormRow row;
    row.k = k;
    try {
      row.norm = submatrix_norm(a, b, k, options);
    } catch (const feasibility_error& e) {
      seq.error = e.what();
      break;
    } catch (const convergence_error& e) {
      seq.error = e.what();
      break;
    }
    if (equal_sizes) {
      row.rescaled = row.norm * std::exp(log_m * k * (1.0 - a.delta()) / 2.0);
      row.beta = -std::log(row.norm) / (k * log_m);
    }
    seq.rows.push_back(row);
  }
  return seq;
}

double witness_lower_bound(const Alphabet& a, const Alphabet& b, int k, long long b1p,
                           long long b2p, const NormOptions&) {
  if (k < 1) throw std::invalid_argument("witness_lower_bound: k must be at least 1");
  if (a.modulus != b.modulus)
    throw std::invalid_argument("witness_lower_bound: alphabets must share the modulus");
  const auto is_digit = [&](long long d) {
    return std::binary_search(b.digits.begin(), b.digits.end(), d);
  };
  if (!is_digit(b1p) || !is_digit(b2p))
    throw std::invalid_argument("witness_lower_bound: b1p and b2p must be digits of B");

  const int two_k = 2 * k;
  checked_pow(a.modulus, two_k);
  long long count = 1;
  for (int i = 0; i < two_k; ++i) {
    count *= b.size();
    if (count > 1000000)
      throw feasibility_error("witness_lower_bound: |B|^{2k} exceeds the enumeration budget");
  }

  /* b' has the digit pair (b1p, b2p) repeated k times. */
  long long b_prime = 0;
  {
    long long place = 1;
    for (int j = 0; j < k; ++j) {
      b_prime += (b1p + a.modulus * b2p) * place;
      place *= a.modulus * a.modulus;
    }
  }

  const std::vector<long long> scales = scale_powers(a.modulus, two_k);
  std::vector<long long> place(static_cast<size_t>(two_k));
  {
    long long m = 1;
    for (int j = 0; j < two_k; ++j) {
      place[static_cast<size_t>(j)] = m;
      m *= a.modulus;
    }
  }

  const long long nb = b.size();
  std::vector<long long> digit(static_cast<size_t>(two_k), 0);
  long long value = 0;
  for (int j = 0; j < two_k; ++j) value += b.digits[0] * place[static_cast<size_t>(j)];

  double sum = 0.0;
  for (long long idx = 0;;) {
    sum += std::norm(scale_product(a.digits, value - b_prime, scales));
    if (++idx >= count) break;
    int axis = 0;
    while (true) {
      const long long old = b.digits[static_cast<size_t>(digit[static_cast<size_t>(axis)])];
      if (++digit[static_cast<size_t>(axis)] < nb) {
        value += (b.digits[static_cast<size_t>(digit[static_cast<size_t>(axis)])] - old) *
                 place[static_cast<size_t>(axis)];
        break;
      }
      digit[static_cast<size_t>(axis)] = 0;
      value += (b.digits[0] - old) * place[static_cast<size_t>(axis)];
      ++axis;
    }
  }
  return std::pow(static_cast<double>(a.size()) / static_cast<double>(a.modulus), two_k) * sum;
}

}  // namespace fup
