#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace dapc {

// K x N non-negative matrix with declared bounds on its nonzero entries.
// Rows are output coordinates, columns are input coordinates.
struct AffinityMatrix {
  Eigen::MatrixXd entries;
  double a_min = 0.0;
  double a_max = 0.0;

  Eigen::Index k() const { return entries.rows(); }
  Eigen::Index n() const { return entries.cols(); }

  // Throws std::invalid_argument unless every entry is either exactly zero
  // or inside [a_min, a_max] with 0 <= a_min <= a_max.
  void validate() const;
};

AffinityMatrix gen_identity(int n);

// Lower-triangular banded Toeplitz: entry (i, j) = taps[i - j] when
// 0 <= i - j < taps.size(). Taps must be positive and no longer than n.
AffinityMatrix gen_toeplitz(const std::vector<double>& taps, int n);

struct SparseGenResult {
  AffinityMatrix matrix;
  int achieved_rank = 0;
};

// K x N matrix with exactly ceil(k^l) nonzeros per row, positions drawn
// without replacement and values uniform in [a_min, a_max]. Regenerates up
// to max_retries times until the rank reaches min(k, n); the rank actually
// achieved is reported either way.
SparseGenResult gen_random_sparse(int k, int n, double l, double a_min,
                                  double a_max, std::uint64_t seed,
                                  int max_retries = 100);

// Rank-revealing reduction of a gained matrix abar = A * diag(v).
struct ReductionMap {
  int t = 0;
  Eigen::MatrixXd u_t;              // K x T, leading left singular vectors
  Eigen::VectorXd singular_values;  // all of them, descending
  std::vector<int> independent_rows;  // E_T: lexicographically smallest
                                      // independent row set, ascending
};

// Numerical rank at relative tolerance 1e-10 of the largest singular value.
// E_T is chosen by elimination in natural row order, which yields the
// lexicographically smallest set of t linearly independent row indices.
ReductionMap svd_reduction(const Eigen::MatrixXd& abar);

struct ConditionReport {
  double kappa_hat = 0.0;  // ln K / ln N
  double l_hat = 0.0;      // max_k ln F_k / ln t (0 when F_k = 1 or t = 1)
  double tau_hat = 0.0;    // ln t / ln K
  std::vector<int> f_counts;               // nonzeros per row
  std::vector<int> non_orthogonal_counts;  // per column of the Gram matrix
                                           // of the best column subset
  bool c1_ok = false;  // 0 < kappa_hat <= 1
  bool c2_ok = false;  // l_hat < 1
  bool c3_ok = false;  // 1/(kappa_hat + [kappa_hat<1] l_hat) <= tau_hat <= 1
  double c4_metric = 0.0;  // max non-orthogonal count / t
};

// Sub-exponential growth diagnostics. Requires K >= 2 and N >= 2 (the
// logarithmic ratios are undefined otherwise) and 1 <= t.
ConditionReport condition_metrics(const AffinityMatrix& a, int t);

enum class SubsetMode { exhaustive, greedy };
enum class VolumeMode { exhaustive, monte_carlo_subsets };

// Volume of the image of [0, c_avg]^N under abar restricted to a rank-t
// subspace: c_avg^t * sum over size-t column subsets G of
// sqrt(det(abar_G' abar_G)). Exhaustive mode enumerates all subsets and
// requires binom(N, t) <= 1e6; monte_carlo_subsets samples `samples`
// subsets uniformly and rescales. Slightly negative determinants above
// -1e-12 are clamped to zero; anything below that is numerical garbage and
// contributes nothing.
double zonotope_volume(const Eigen::MatrixXd& abar, int t, double c_avg,
                       VolumeMode mode, std::int64_t samples = 100000,
                       std::uint64_t seed = 0x5eed);

// Size-t column subset maximizing det of its Gram matrix. Exhaustive mode
// enumerates (binom(N, t) <= 1e6 enforced) and breaks ties by taking the
// lexicographically smallest subset; greedy mode adds the column with the
// largest incremental determinant one at a time (ties to the smallest
// index). Returned indices are ascending.
std::vector<int> best_column_subset(const Eigen::MatrixXd& abar, int t,
                                    SubsetMode mode);

// Product of column norms of a square matrix; upper bound on |det|.
double hadamard_bound(const Eigen::MatrixXd& m);

// Smallest singular value of b; throws if b is rank deficient at relative
// tolerance 1e-10.
double min_gain(const Eigen::MatrixXd& b);

}  // namespace dapc
