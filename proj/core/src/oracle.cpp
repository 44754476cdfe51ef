#include "dapc/oracle.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace dapc {

double poisson_moment4_exact(double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
  const double l2 = lambda * lambda;
  return l2 * l2 + 6.0 * l2 * lambda + 7.0 * l2 + lambda;
}

McEstimate poisson_moment4_mc(double lambda, std::int64_t samples, Rng& rng) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  // Streaming mean and sum of squared deviations (Welford) over the
  // per-sample statistic x^4.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    const double x = static_cast<double>(rng.poisson(lambda));
    const double x2 = x * x;
    const double w = x2 * x2;
    const double delta = w - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (w - mean);
  }
  McEstimate out;
  out.estimate = mean;
  const double var = m2 / static_cast<double>(samples - 1);
  out.stderr_est = std::sqrt(var / static_cast<double>(samples));
  out.samples = samples;
  return out;
}

namespace {

// Linear index of a grid cell; coordinates must already be clamped to range.
std::int64_t cell_index(const std::vector<std::int64_t>& coord,
                        const std::vector<std::int64_t>& dims) {
  std::int64_t idx = 0;
  for (std::size_t d = 0; d < coord.size(); ++d) {
    idx = idx * dims[d] + coord[d];
  }
  return idx;
}

}  // namespace

McEstimate zonotope_volume_mc(const Eigen::MatrixXd& abar,
                              const ReductionMap& red, double c_avg,
                              std::int64_t samples, Rng& rng) {
  const int t = red.t;
  const auto n = static_cast<int>(abar.cols());
  if (t < 1 || t > 3) {
    throw std::invalid_argument("grid occupancy supports 1 <= t <= 3");
  }
  if (c_avg <= 0.0) throw std::invalid_argument("c_avg must be positive");
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  if (red.u_t.rows() != abar.rows()) {
    throw std::invalid_argument("reduction does not match the matrix");
  }

  const Eigen::MatrixXd to_reduced = red.u_t.transpose() * abar;  // t x n

  // Pass 1: bounding box of the mapped samples. The engine is copied first
  // so pass 2 can replay the identical stream without storing the points.
  Rng replay = rng;
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(t, 0.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(t, 0.0);
  Eigen::VectorXd x(n), z(t);
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int j = 0; j < n; ++j) x(j) = rng.uniform(0.0, c_avg);
    z.noalias() = to_reduced * x;
    if (s == 0) {
      lo = z;
      hi = z;
    } else {
      lo = lo.cwiseMin(z);
      hi = hi.cwiseMax(z);
    }
  }

  const double diag = (hi - lo).norm();
  McEstimate out;
  out.samples = samples;
  if (diag <= 0.0) {
    // All samples collapsed onto one point; the image has no volume at this
    // resolution.
    return out;
  }
  const double h = diag / 512.0;

  std::vector<std::int64_t> dims(t);
  for (int d = 0; d < t; ++d) {
    const double range = hi(d) - lo(d);
    dims[d] = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(range / h)));
  }

  // Pass 2: mark occupied cells. Each sample lands in exactly one cell, so
  // the set holds at most `samples` entries.
  std::unordered_set<std::int64_t> occupied;
  std::vector<std::int64_t> coord(t);
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int j = 0; j < n; ++j) x(j) = replay.uniform(0.0, c_avg);
    z.noalias() = to_reduced * x;
    for (int d = 0; d < t; ++d) {
      auto c = static_cast<std::int64_t>(std::floor((z(d) - lo(d)) / h));
      if (c < 0) c = 0;
      if (c >= dims[d]) c = dims[d] - 1;
      coord[d] = c;
    }
    occupied.insert(cell_index(coord, dims));
  }

  double cell_vol = 1.0;
  for (int d = 0; d < t; ++d) cell_vol *= h;

  // Pass 3: hit-test fresh uniform points of the bounding box against the
  // occupancy structure. The caller's engine continues past pass 1, so the
  // stream is fresh and the whole procedure is a pure function of the
  // engine's starting state.
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int d = 0; d < t; ++d) {
      const double u = rng.uniform(lo(d), hi(d));
      auto c = static_cast<std::int64_t>(std::floor((u - lo(d)) / h));
      if (c < 0) c = 0;
      if (c >= dims[d]) c = dims[d] - 1;
      coord[d] = c;
    }
    if (occupied.count(cell_index(coord, dims)) != 0) ++hits;
  }
  double box_vol = 1.0;
  for (int d = 0; d < t; ++d) box_vol *= hi(d) - lo(d);

  // Surface cells: occupied cells with at least one unoccupied axis
  // neighbor. Their total volume bounds how much the grid discretization
  // can shift the estimate in either direction.
  std::int64_t surface = 0;
  std::vector<std::int64_t> stride(t, 1);
  for (int d = t - 2; d >= 0; --d) stride[d] = stride[d + 1] * dims[d + 1];
  for (const std::int64_t idx : occupied) {
    std::int64_t rem = idx;
    bool boundary = false;
    for (int d = 0; d < t && !boundary; ++d) {
      const std::int64_t c = rem / stride[d];
      rem %= stride[d];
      if (c == 0 || c == dims[d] - 1) {
        boundary = true;  // touches the bounding box, counts as surface
        break;
      }
      if (occupied.find(idx - stride[d]) == occupied.end() ||
          occupied.find(idx + stride[d]) == occupied.end()) {
        boundary = true;
      }
    }
    if (boundary) ++surface;
  }

  out.estimate = box_vol * static_cast<double>(hits) /
                 static_cast<double>(samples);
  out.stderr_est = static_cast<double>(surface) * cell_vol;
  return out;
}

PairwiseReport converse_pairwise_report(const Codebook& cb,
                                        const ChannelParams& ch,
                                        double theta_t) {
  if (theta_t <= 0.0) throw std::invalid_argument("theta must be positive");
  const int m = cb.m();
  const auto k = static_cast<int>(cb.affine.cols());
  if (ch.lambda.size() != k) {
    throw std::invalid_argument("channel does not match the codebook");
  }
  if (m < 2) {
    throw std::invalid_argument("pairwise report needs at least two codewords");
  }
  PairwiseReport rep;
  rep.pairs_total = static_cast<std::int64_t>(m) * (m - 1);
  for (int i1 = 0; i1 < m; ++i1) {
    for (int i2 = 0; i2 < m; ++i2) {
      if (i1 == i2) continue;
      bool separated = false;
      for (int kk = 0; kk < k; ++kk) {
        const double d1 = cb.affine(i1, kk) + ch.lambda(kk);
        const double d2 = cb.affine(i2, kk) + ch.lambda(kk);
        if (std::abs(1.0 - d2 / d1) > theta_t) {
          separated = true;
          break;
        }
      }
      if (separated) ++rep.pairs_satisfying;
    }
  }
  rep.fraction = static_cast<double>(rep.pairs_satisfying) /
                 static_cast<double>(rep.pairs_total);
  return rep;
}

SubmatrixSvReport unitary_submatrix_sv_report(int k, int t,
                                              std::int64_t trials, Rng& rng) {
  if (k < 1 || t < 1 || t > k) {
    throw std::invalid_argument("need 1 <= t <= k");
  }
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  constexpr double kTol = 1e-9;
  SubmatrixSvReport rep;
  rep.trials = trials;
  rep.min_sv_min = 2.0;   // singular values of a submatrix never exceed 1
  rep.max_sv_max = -1.0;
  double mean_acc = 0.0;
  Eigen::MatrixXd g(k, k);
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) g(i, j) = rng.gaussian();
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r =
        qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the sign ambiguity of QR so the orthogonal factor is uniform.
    for (int j = 0; j < k; ++j) {
      if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(q.topLeftCorner(t, t));
    const Eigen::VectorXd& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    const double largest = sv(0);
    mean_acc += smallest;
    rep.min_sv_min = std::min(rep.min_sv_min, smallest);
    rep.max_sv_max = std::max(rep.max_sv_max, largest);
    int below = 0;
    bool bad = false;
    for (int j = 0; j < sv.size(); ++j) {
      if (sv(j) > 1.0 + kTol) bad = true;
      if (sv(j) < 1.0 - kTol) ++below;
    }
    if (below > k - t) bad = true;
    if (bad) ++rep.bound_violations;
  }
  rep.min_sv_mean = mean_acc / static_cast<double>(trials);
  return rep;
}

OracleReport make_report(std::string name, double closed, double oracle,
                         double tolerance, std::string tolerance_kind,
                         std::int64_t samples_or_cases) {
  OracleReport rep;
  rep.name = std::move(name);
  rep.closed_form_value = closed;
  rep.oracle_value = oracle;
  rep.tolerance = tolerance;
  rep.tolerance_kind = std::move(tolerance_kind);
  rep.samples_or_cases = samples_or_cases;
  const double diff = std::abs(closed - oracle);
  if (rep.tolerance_kind == "rel") {
    rep.pass = diff <= tolerance * std::abs(closed);
  } else {
    rep.pass = diff <= tolerance;
  }
  return rep;
}

}  // namespace dapc
