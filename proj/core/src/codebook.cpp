#include "dapc/codebook.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dapc {
namespace {

void draw_candidate(Eigen::VectorXd& x, double c_avg, Rng& rng) {
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.uniform(0.0, c_avg);
}

bool admissible(const std::vector<Eigen::VectorXd>& accepted,
                const Eigen::VectorXd& z, double sep_sq) {
  for (const auto& other : accepted)
    if ((z - other).squaredNorm() < sep_sq) return false;
  return true;
}

}  // namespace

PackingRadius packing_radius(double a, double b, double kappa, double l,
                             int t) {
  if (!(a > 0.0)) throw std::invalid_argument("packing_radius: a must be > 0");
  if (!(b >= 0.0))
    throw std::invalid_argument("packing_radius: b must be >= 0");
  if (!(kappa > 0.0) || !(kappa <= 1.0))
    throw std::invalid_argument("packing_radius: kappa must lie in (0, 1]");
  if (!(l >= 0.0) || !(l < 1.0))
    throw std::invalid_argument("packing_radius: l must lie in [0, 1)");
  if (t < 1) throw std::invalid_argument("packing_radius: t must be >= 1");
  PackingRadius pr;
  const double exponent = (2.0 - (kappa + 4.0 * l + b)) / 2.0;
  pr.epsilon_t = a / std::pow(static_cast<double>(t), exponent);
  pr.r0 = std::sqrt(static_cast<double>(t) * pr.epsilon_t);
  return pr;
}

Codebook construct_greedy(const ChannelParams& ch, const ReductionMap& red,
                          double c_avg, double c_max, double r0,
                          std::int64_t candidate_budget, std::uint64_t seed) {
  if (!(c_avg > 0.0))
    throw std::invalid_argument("construct_greedy: c_avg must be positive");
  if (!(c_max >= c_avg))
    throw std::invalid_argument("construct_greedy: need c_avg <= c_max");
  if (!(r0 > 0.0))
    throw std::invalid_argument("construct_greedy: r0 must be positive");
  if (candidate_budget < 1)
    throw std::invalid_argument(
        "construct_greedy: candidate_budget must be >= 1");

  const Eigen::Index n = ch.affinity.n();
  // Reduced image of x is u_t' * (abar * x); fold the two maps into one.
  const Eigen::MatrixXd to_reduced = red.u_t.transpose() * ch.abar;
  const double sep_sq = 4.0 * r0 * r0;

  Rng rng(derive_seed(seed, 0));
  Eigen::VectorXd x(n);
  std::vector<Eigen::VectorXd> originals;
  std::vector<Eigen::VectorXd> reduced;
  for (std::int64_t c = 0; c < candidate_budget; ++c) {
    draw_candidate(x, c_avg, rng);
    Eigen::VectorXd z = to_reduced * x;
    if (admissible(reduced, z, sep_sq)) {
      originals.push_back(x);
      reduced.push_back(std::move(z));
    }
  }

  Codebook cb;
  const auto m = static_cast<Eigen::Index>(originals.size());
  cb.original.resize(m, n);
  cb.reduced.resize(m, red.t);
  for (Eigen::Index i = 0; i < m; ++i) {
    cb.original.row(i) = originals[i].transpose();
    cb.reduced.row(i) = reduced[i].transpose();
  }
  cb.affine = cb.original * ch.abar.transpose();
  cb.r0 = r0;
  cb.c_avg = c_avg;
  cb.c_max = c_max;
  cb.seed = seed;
  cb.candidate_budget = candidate_budget;

  Rng probe_rng(derive_seed(seed, 1));
  const std::int64_t probes = std::max<std::int64_t>(1, candidate_budget / 10);
  cb.saturation_count = saturation_probe(cb, ch, red, probes, probe_rng);
  cb.saturated = cb.saturation_count == 0;
  return cb;
}

double min_distance_reduced(const Codebook& cb) {
  const Eigen::Index m = cb.reduced.rows();
  if (m < 2)
    throw std::invalid_argument(
        "min_distance_reduced: undefined for fewer than two codewords");
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j)
      best = std::min(best,
                      (cb.reduced.row(i) - cb.reduced.row(j)).squaredNorm());
  return std::sqrt(best);
}

std::int64_t saturation_probe(const Codebook& cb, const ChannelParams& ch,
                              const ReductionMap& red, std::int64_t probes,
                              Rng& rng) {
  if (probes < 1)
    throw std::invalid_argument("saturation_probe: probes must be >= 1");
  const Eigen::MatrixXd to_reduced = red.u_t.transpose() * ch.abar;
  const double sep_sq = 4.0 * cb.r0 * cb.r0;
  Eigen::VectorXd x(ch.affinity.n());
  std::int64_t admissible_count = 0;
  for (std::int64_t p = 0; p < probes; ++p) {
    draw_candidate(x, cb.c_avg, rng);
    const Eigen::VectorXd z = to_reduced * x;
    bool ok = true;
    for (Eigen::Index i = 0; i < cb.reduced.rows(); ++i) {
      if ((z.transpose() - cb.reduced.row(i)).squaredNorm() < sep_sq) {
        ok = false;
        break;
      }
    }
    if (ok) ++admissible_count;
  }
  return admissible_count;
}

double achieved_rate(std::int64_t m, int t) {
  if (m < 1) throw std::invalid_argument("achieved_rate: m must be >= 1");
  if (t < 2) throw std::invalid_argument("achieved_rate: t must be >= 2");
  return std::log2(static_cast<double>(m)) /
         (static_cast<double>(t) * std::log2(static_cast<double>(t)));
}

}  // namespace dapc
