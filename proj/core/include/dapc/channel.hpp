#pragma once

#include <Eigen/Dense>

#include "dapc/affinity.hpp"
#include "dapc/rng.hpp"

namespace dapc {

// Discrete channel with Poisson output statistics: on input x the output is
// Y_k ~ Poisson(abar_k . x + lambda_k) per coordinate, independently, where
// abar = A * diag(v) combines the affinity matrix with per-input gains.
struct ChannelParams {
  AffinityMatrix affinity;
  Eigen::VectorXd v;       // length N, positive gains
  Eigen::VectorXd lambda;  // length K, positive interference
  double v_min = 0.0;
  double v_max = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  Eigen::MatrixXd abar;  // affinity.entries * diag(v), kept in sync by make()

  // Validates bounds and builds abar. Throws std::invalid_argument on any
  // dimension or bound violation.
  static ChannelParams make(AffinityMatrix affinity, Eigen::VectorXd v,
                            Eigen::VectorXd lambda, double v_min, double v_max,
                            double lambda_min, double lambda_max);

  // Convenience for constant gain/interference profiles.
  static ChannelParams make_const(AffinityMatrix affinity, double v,
                                  double lambda);
};

// mu = abar * x + lambda. Inputs must be non-negative.
Eigen::VectorXd mean_vector(const ChannelParams& ch, const Eigen::VectorXd& x);

// One channel output; coordinates are sampled in index order so a given
// generator state yields one well-defined draw.
Eigen::VectorXi sample(const ChannelParams& ch, const Eigen::VectorXd& x,
                       Rng& rng);

// Exact Poisson log-likelihood of output y under input x:
// sum_k [ -mu_k + y_k ln mu_k - ln(y_k!) ].
double log_likelihood(const ChannelParams& ch, const Eigen::VectorXd& x,
                      const Eigen::VectorXi& y);

}  // namespace dapc
