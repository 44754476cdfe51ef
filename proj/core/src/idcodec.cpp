#include "dapc/idcodec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace dapc {
namespace {

constexpr double kZ95 = 1.959963984540054;  // two-sided 95% normal quantile

struct CiResult {
  double halfwidth = 0.0;
  std::string method;
};

// Normal-approximation half-width, replaced by the Wilson interval when
// fewer than 5 errors were observed (the normal approximation is unusable
// near the boundary).
CiResult confidence_halfwidth(std::int64_t errors, std::int64_t trials) {
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  CiResult ci;
  if (errors >= 5 && trials - errors >= 5) {
    ci.halfwidth = kZ95 * std::sqrt(p * (1.0 - p) / n);
    ci.method = "normal";
  } else {
    const double z2 = kZ95 * kZ95;
    ci.halfwidth = kZ95 *
                   std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) /
                   (1.0 + z2 / n);
    ci.method = "wilson";
  }
  return ci;
}

std::uint64_t unit_seed(std::uint64_t root, std::int64_t unit) {
  return derive_seed(root, 2 + static_cast<std::uint64_t>(unit));
}

}  // namespace

DecoderParams DecoderParams::make(double a, double b, double kappa, double l,
                                  int t, std::vector<int> e_t) {
  const PackingRadius pr = packing_radius(a, b, kappa, l, t);
  if (static_cast<int>(e_t.size()) != t)
    throw std::invalid_argument("DecoderParams: e_t must have exactly t rows");
  DecoderParams dp;
  dp.a = a;
  dp.b = b;
  dp.kappa = kappa;
  dp.l = l;
  dp.t = t;
  dp.psi_t = (4.0 / 3.0) * pr.epsilon_t;
  dp.e_t = std::move(e_t);
  return dp;
}

double z_metric(const Eigen::VectorXi& y, const Eigen::VectorXd& affine_codeword,
                const Eigen::VectorXd& lambda, const std::vector<int>& e_t) {
  if (e_t.empty()) throw std::invalid_argument("z_metric: e_t is empty");
  if (y.size() != affine_codeword.size() || y.size() != lambda.size())
    throw std::invalid_argument("z_metric: dimension mismatch");
  double sum = 0.0;
  for (int k : e_t) {
    if (k < 0 || k >= y.size())
      throw std::invalid_argument("z_metric: e_t index out of range");
    const double dev = y(k) - (affine_codeword(k) + lambda(k));
    sum += dev * dev - y(k);
  }
  return sum / static_cast<double>(e_t.size());
}

bool identify(const Eigen::VectorXi& y, std::int64_t j, const Codebook& cb,
              const ChannelParams& ch, const DecoderParams& dp) {
  if (j < 0 || j >= cb.m())
    throw std::invalid_argument("identify: message index out of range");
  const double z =
      z_metric(y, cb.affine.row(j).transpose(), ch.lambda, dp.e_t);
  return std::fabs(z) <= dp.psi_t;
}

ErrorEstimate estimate_errors(const Codebook& cb, const ChannelParams& ch,
                              const DecoderParams& dp, std::int64_t trials,
                              std::uint64_t root_seed, std::int64_t pair_cap) {
  if (trials < 1)
    throw std::invalid_argument("estimate_errors: trials must be >= 1");
  if (pair_cap < 1)
    throw std::invalid_argument("estimate_errors: pair_cap must be >= 1");
  const std::int64_t m = cb.m();
  if (m < 1)
    throw std::invalid_argument("estimate_errors: empty codebook");

  ErrorEstimate est;
  est.t = dp.t;
  est.m = m;
  est.kappa = dp.kappa;
  est.l = dp.l;
  est.a = dp.a;
  est.b = dp.b;
  est.psi_t = dp.psi_t;
  est.trials = trials;

  // Streams: 0 selects messages, 1 selects pairs; unit u simulates on
  // derive_seed(root_seed, 2 + u) with one sub-stream per trial.
  std::vector<std::int64_t> messages(m);
  for (std::int64_t i = 0; i < m; ++i) messages[i] = i;
  {
    Rng shuffle_rng(derive_seed(root_seed, 0));
    shuffle(messages, shuffle_rng);
  }
  const auto n_msg = static_cast<std::int64_t>(
      std::min<std::int64_t>(m, pair_cap));
  messages.resize(n_msg);

  std::int64_t next_unit = 0;
  double sum_p = 0.0;
  double max_p = -1.0;
  std::int64_t max_errors = 0;
  for (std::int64_t u = 0; u < n_msg; ++u, ++next_unit) {
    const std::int64_t i = messages[u];
    const std::uint64_t useed = unit_seed(root_seed, next_unit);
    const Eigen::VectorXd x = cb.original.row(i).transpose();
    std::int64_t errors = 0;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
      Rng rng(derive_seed(useed, static_cast<std::uint64_t>(trial)));
      const Eigen::VectorXi y = sample(ch, x, rng);
      if (!identify(y, i, cb, ch, dp)) ++errors;
    }
    const double p = static_cast<double>(errors) / static_cast<double>(trials);
    sum_p += p;
    if (p > max_p) {
      max_p = p;
      max_errors = errors;
    }
  }
  est.messages_evaluated = n_msg;
  est.type1_max = max_p;
  est.type1_mean = sum_p / static_cast<double>(n_msg);
  const CiResult ci1 = confidence_halfwidth(max_errors, trials);
  est.type1_ci_halfwidth = ci1.halfwidth;
  est.type1_ci_method = ci1.method;

  if (m < 2) {
    est.type2_present = false;
    est.type2_max = std::numeric_limits<double>::quiet_NaN();
    est.type2_mean = std::numeric_limits<double>::quiet_NaN();
    est.type2_ci_halfwidth = std::numeric_limits<double>::quiet_NaN();
    return est;
  }

  // Ordered pairs (sender i, decoder j), i != j. Enumerate when they all
  // fit under the cap, otherwise sample distinct pairs uniformly.
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  const double total_pairs =
      static_cast<double>(m) * static_cast<double>(m - 1);
  if (total_pairs <= static_cast<double>(pair_cap)) {
    for (std::int64_t i = 0; i < m; ++i)
      for (std::int64_t j = 0; j < m; ++j)
        if (i != j) pairs.emplace_back(i, j);
  } else {
    Rng pair_rng(derive_seed(root_seed, 1));
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    while (static_cast<std::int64_t>(pairs.size()) < pair_cap) {
      const auto i = static_cast<std::int64_t>(
          pair_rng.uniform_int(static_cast<std::uint64_t>(m)));
      const auto j = static_cast<std::int64_t>(
          pair_rng.uniform_int(static_cast<std::uint64_t>(m)));
      if (i == j) continue;
      if (seen.insert({i, j}).second) pairs.emplace_back(i, j);
    }
  }

  double sum_q = 0.0;
  double max_q = -1.0;
  std::int64_t max_accepts = 0;
  for (const auto& [i, j] : pairs) {
    const std::uint64_t useed = unit_seed(root_seed, next_unit++);
    const Eigen::VectorXd x = cb.original.row(i).transpose();
    std::int64_t accepts = 0;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
      Rng rng(derive_seed(useed, static_cast<std::uint64_t>(trial)));
      const Eigen::VectorXi y = sample(ch, x, rng);
      if (identify(y, j, cb, ch, dp)) ++accepts;
    }
    const double q =
        static_cast<double>(accepts) / static_cast<double>(trials);
    sum_q += q;
    if (q > max_q) {
      max_q = q;
      max_accepts = accepts;
    }
  }
  est.type2_present = true;
  est.pairs_evaluated = static_cast<std::int64_t>(pairs.size());
  est.type2_max = max_q;
  est.type2_mean = sum_q / static_cast<double>(pairs.size());
  const CiResult ci2 = confidence_halfwidth(max_accepts, trials);
  est.type2_ci_halfwidth = ci2.halfwidth;
  est.type2_ci_method = ci2.method;
  return est;
}

}  // namespace dapc
