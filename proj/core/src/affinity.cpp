#include "dapc/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dapc/rng.hpp"

namespace dapc {
namespace {

constexpr double kRankTol = 1e-10;        // relative to sigma_max
constexpr double kOrthoTol = 1e-9;        // |<x,y>| <= tol*|x||y| counts as 0
constexpr double kDetClamp = -1e-12;      // Gram determinant noise floor
constexpr double kExhaustiveCap = 1e6;    // max subsets enumerated

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) {
    r *= static_cast<double>(n - k + i) / static_cast<double>(i);
    if (r > 1e18) return 1e18;  // saturate; callers only compare against caps
  }
  return r;
}

// Advances `idx` to the next size-t combination of [0, n) in lexicographic
// order; returns false when exhausted.
bool next_combination(std::vector<int>& idx, int n) {
  const int t = static_cast<int>(idx.size());
  int i = t - 1;
  while (i >= 0 && idx[i] == n - t + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

double gram_det(const Eigen::MatrixXd& abar, const std::vector<int>& cols) {
  const auto t = static_cast<Eigen::Index>(cols.size());
  Eigen::MatrixXd s(abar.rows(), t);
  for (Eigen::Index j = 0; j < t; ++j) s.col(j) = abar.col(cols[j]);
  const Eigen::MatrixXd g = s.transpose() * s;
  return g.determinant();
}

double subset_contribution(const Eigen::MatrixXd& abar,
                           const std::vector<int>& cols) {
  const double det = gram_det(abar, cols);
  if (det < kDetClamp) return 0.0;
  return std::sqrt(std::max(det, 0.0));
}

int rank_of(const Eigen::VectorXd& sv) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cut = kRankTol * sv(0);
  int r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

}  // namespace

void AffinityMatrix::validate() const {
  if (entries.rows() < 1 || entries.cols() < 1)
    throw std::invalid_argument("AffinityMatrix: empty matrix");
  if (!(a_min >= 0.0) || !(a_max >= a_min))
    throw std::invalid_argument(
        "AffinityMatrix: need 0 <= a_min <= a_max");
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries.cols(); ++j) {
      const double e = entries(i, j);
      if (!std::isfinite(e) || e < 0.0)
        throw std::invalid_argument(
            "AffinityMatrix: entries must be finite and non-negative");
      if (e != 0.0 && (e < a_min || e > a_max))
        throw std::invalid_argument(
            "AffinityMatrix: nonzero entry outside [a_min, a_max]");
    }
  }
}

AffinityMatrix gen_identity(int n) {
  if (n < 1) throw std::invalid_argument("gen_identity: n must be >= 1");
  AffinityMatrix a;
  a.entries = Eigen::MatrixXd::Identity(n, n);
  a.a_min = 1.0;
  a.a_max = 1.0;
  return a;
}

AffinityMatrix gen_toeplitz(const std::vector<double>& taps, int n) {
  if (taps.empty()) throw std::invalid_argument("gen_toeplitz: empty taps");
  if (n < 1) throw std::invalid_argument("gen_toeplitz: n must be >= 1");
  if (static_cast<int>(taps.size()) > n)
    throw std::invalid_argument("gen_toeplitz: more taps than rows");
  for (double tap : taps)
    if (!(tap > 0.0) || !std::isfinite(tap))
      throw std::invalid_argument("gen_toeplitz: taps must be positive");

  AffinityMatrix a;
  a.entries = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - static_cast<int>(taps.size()) + 1); j <= i;
         ++j)
      a.entries(i, j) = taps[i - j];
  a.a_min = *std::min_element(taps.begin(), taps.end());
  a.a_max = *std::max_element(taps.begin(), taps.end());
  return a;
}

SparseGenResult gen_random_sparse(int k, int n, double l, double a_min,
                                  double a_max, std::uint64_t seed,
                                  int max_retries) {
  if (k < 1 || n < 1)
    throw std::invalid_argument("gen_random_sparse: k, n must be >= 1");
  if (!(l >= 0.0) || !(l < 1.0))
    throw std::invalid_argument("gen_random_sparse: l must be in [0, 1)");
  if (!(a_min > 0.0) || !(a_max >= a_min))
    throw std::invalid_argument(
        "gen_random_sparse: need 0 < a_min <= a_max");
  if (max_retries < 1)
    throw std::invalid_argument("gen_random_sparse: max_retries must be >= 1");

  const int per_row = static_cast<int>(
      std::ceil(std::pow(static_cast<double>(k), l)));
  if (per_row > n)
    throw std::invalid_argument(
        "gen_random_sparse: ceil(k^l) nonzeros per row exceed n columns");

  const int want = std::min(k, n);
  SparseGenResult best;
  std::vector<int> cols(n);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, n);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < n; ++j) cols[j] = j;
      // Partial Fisher-Yates: the first per_row entries are a uniform
      // draw of positions without replacement.
      for (int j = 0; j < per_row; ++j) {
        const int r = j + static_cast<int>(rng.uniform_int(
                              static_cast<std::uint64_t>(n - j)));
        std::swap(cols[j], cols[r]);
        m(i, cols[j]) = rng.uniform(a_min, a_max);
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const int rank = rank_of(svd.singularValues());
    if (attempt == 0 || rank > best.achieved_rank) {
      best.matrix.entries = m;
      best.matrix.a_min = a_min;
      best.matrix.a_max = a_max;
      best.achieved_rank = rank;
    }
    if (rank >= want) break;
  }
  return best;
}

ReductionMap svd_reduction(const Eigen::MatrixXd& abar) {
  if (abar.rows() < 1 || abar.cols() < 1)
    throw std::invalid_argument("svd_reduction: empty matrix");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(abar, Eigen::ComputeThinU);
  const Eigen::VectorXd sv = svd.singularValues();
  const int t = rank_of(sv);
  if (t == 0) throw std::invalid_argument("svd_reduction: zero matrix");

  ReductionMap red;
  red.t = t;
  red.u_t = svd.matrixU().leftCols(t);
  red.singular_values = sv;

  // E_T: walk rows in natural order and keep each one that is independent
  // of those already kept (modified Gram-Schmidt with re-orthogonalization).
  // Taking the first independent row at every step gives the
  // lexicographically smallest independent set.
  const double sigma_max = sv(0);
  double tol = sigma_max * kRankTol;
  for (int relax = 0; relax < 2 && static_cast<int>(
                          red.independent_rows.size()) < t; ++relax) {
    red.independent_rows.clear();
    std::vector<Eigen::VectorXd> basis;
    for (Eigen::Index i = 0;
         i < abar.rows() && static_cast<int>(red.independent_rows.size()) < t;
         ++i) {
      Eigen::VectorXd r = abar.row(i).transpose();
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) r -= q.dot(r) * q;
      const double nrm = r.norm();
      if (nrm > tol) {
        basis.push_back(r / nrm);
        red.independent_rows.push_back(static_cast<int>(i));
      }
    }
    tol *= 1e-4;  // second chance if the first threshold was too strict
  }
  if (static_cast<int>(red.independent_rows.size()) < t)
    throw std::runtime_error(
        "svd_reduction: could not assemble an independent row set of size t");
  return red;
}

ConditionReport condition_metrics(const AffinityMatrix& a, int t) {
  a.validate();
  const int k = static_cast<int>(a.k());
  const int n = static_cast<int>(a.n());
  if (k < 2 || n < 2)
    throw std::invalid_argument(
        "condition_metrics: K and N must both be >= 2");
  if (t < 1 || t > n)
    throw std::invalid_argument("condition_metrics: t must be in [1, N]");

  ConditionReport rep;
  rep.kappa_hat = std::log(static_cast<double>(k)) /
                  std::log(static_cast<double>(n));
  rep.tau_hat = std::log(static_cast<double>(t)) /
                std::log(static_cast<double>(k));

  rep.f_counts.resize(k);
  for (int i = 0; i < k; ++i) {
    int c = 0;
    for (int j = 0; j < n; ++j)
      if (a.entries(i, j) != 0.0) ++c;
    rep.f_counts[i] = c;
  }

  rep.l_hat = 0.0;
  if (t > 1) {
    for (int f : rep.f_counts)
      if (f > 1)
        rep.l_hat = std::max(rep.l_hat,
                             std::log(static_cast<double>(f)) /
                                 std::log(static_cast<double>(t)));
  }

  const SubsetMode mode = binom(n, t) <= kExhaustiveCap
                              ? SubsetMode::exhaustive
                              : SubsetMode::greedy;
  const std::vector<int> subset = best_column_subset(a.entries, t, mode);
  Eigen::MatrixXd s(k, t);
  for (int j = 0; j < t; ++j) s.col(j) = a.entries.col(subset[j]);
  const Eigen::MatrixXd g = s.transpose() * s;

  rep.non_orthogonal_counts.assign(t, 0);
  for (int i = 0; i < t; ++i) {
    const double ni = g.col(i).norm();
    for (int j = 0; j < t; ++j) {
      if (j == i) continue;
      const double inner = g.col(i).dot(g.col(j));
      if (std::fabs(inner) > kOrthoTol * ni * g.col(j).norm())
        ++rep.non_orthogonal_counts[i];
    }
  }
  const int max_count = *std::max_element(rep.non_orthogonal_counts.begin(),
                                          rep.non_orthogonal_counts.end());
  rep.c4_metric = static_cast<double>(max_count) / static_cast<double>(t);

  rep.c1_ok = rep.kappa_hat > 0.0 && rep.kappa_hat <= 1.0;
  rep.c2_ok = rep.l_hat < 1.0;
  const double denom =
      rep.kappa_hat + (rep.kappa_hat < 1.0 ? rep.l_hat : 0.0);
  rep.c3_ok = denom > 0.0 && 1.0 / denom <= rep.tau_hat && rep.tau_hat <= 1.0;
  return rep;
}

double zonotope_volume(const Eigen::MatrixXd& abar, int t, double c_avg,
                       VolumeMode mode, std::int64_t samples,
                       std::uint64_t seed) {
  const int n = static_cast<int>(abar.cols());
  if (t < 1 || t > n)
    throw std::invalid_argument("zonotope_volume: t must be in [1, N]");
  if (!(c_avg > 0.0))
    throw std::invalid_argument("zonotope_volume: c_avg must be positive");

  const double scale = std::pow(c_avg, t);
  if (mode == VolumeMode::exhaustive) {
    if (binom(n, t) > kExhaustiveCap)
      throw std::invalid_argument(
          "zonotope_volume: too many subsets for exhaustive mode "
          "(binom(N, t) > 1e6)");
    std::vector<int> idx(t);
    for (int i = 0; i < t; ++i) idx[i] = i;
    double sum = 0.0;
    do {
      sum += subset_contribution(abar, idx);
    } while (next_combination(idx, n));
    return scale * sum;
  }

  if (samples < 1)
    throw std::invalid_argument("zonotope_volume: samples must be >= 1");
  Rng rng(seed);
  std::vector<int> cols(n);
  std::vector<int> pick(t);
  double acc = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int j = 0; j < n; ++j) cols[j] = j;
    for (int j = 0; j < t; ++j) {
      const int r = j + static_cast<int>(rng.uniform_int(
                            static_cast<std::uint64_t>(n - j)));
      std::swap(cols[j], cols[r]);
      pick[j] = cols[j];
    }
    std::sort(pick.begin(), pick.end());
    acc += subset_contribution(abar, pick);
  }
  const double total = std::exp(std::lgamma(n + 1.0) - std::lgamma(t + 1.0) -
                                std::lgamma(n - t + 1.0));
  return scale * total * acc / static_cast<double>(samples);
}

std::vector<int> best_column_subset(const Eigen::MatrixXd& abar, int t,
                                    SubsetMode mode) {
  const int n = static_cast<int>(abar.cols());
  if (t < 1 || t > n)
    throw std::invalid_argument("best_column_subset: t must be in [1, N]");

  if (mode == SubsetMode::exhaustive) {
    if (binom(n, t) > kExhaustiveCap)
      throw std::invalid_argument(
          "best_column_subset: too many subsets for exhaustive mode "
          "(binom(N, t) > 1e6)");
    std::vector<int> idx(t);
    for (int i = 0; i < t; ++i) idx[i] = i;
    std::vector<int> best = idx;
    double best_det = gram_det(abar, idx);
    while (next_combination(idx, n)) {
      const double det = gram_det(abar, idx);
      if (det > best_det) {  // strict: lexicographic enumeration keeps ties
        best_det = det;
        best = idx;
      }
    }
    return best;
  }

  // Greedy determinant maximization: the incremental determinant of adding
  // column c equals the squared residual of c against the chosen span, so
  // we grow an orthonormal basis and always take the largest residual.
  std::vector<int> chosen;
  std::vector<Eigen::VectorXd> basis;
  std::vector<bool> used(n, false);
  for (int step = 0; step < t; ++step) {
    int arg = -1;
    double best_score = -1.0;
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      Eigen::VectorXd r = abar.col(c);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) r -= q.dot(r) * q;
      const double score = r.squaredNorm();
      if (score > best_score) {
        best_score = score;
        arg = c;
      }
    }
    used[arg] = true;
    chosen.push_back(arg);
    Eigen::VectorXd r = abar.col(arg);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) r -= q.dot(r) * q;
    const double nrm = r.norm();
    if (nrm > 0.0) basis.push_back(r / nrm);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

double hadamard_bound(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("hadamard_bound: matrix must be square");
  double prod = 1.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) prod *= m.col(j).norm();
  return prod;
}

double min_gain(const Eigen::MatrixXd& b) {
  if (b.rows() < 1 || b.cols() < 1)
    throw std::invalid_argument("min_gain: empty matrix");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
  const Eigen::VectorXd sv = svd.singularValues();
  if (b.rows() < b.cols() || rank_of(sv) < b.cols())
    throw std::invalid_argument("min_gain: rank-deficient matrix");
  return sv(sv.size() - 1);
}

}  // namespace dapc
