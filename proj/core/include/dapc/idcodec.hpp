#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "dapc/channel.hpp"
#include "dapc/codebook.hpp"

namespace dapc {

// Threshold decoder parameters. psi_t follows the packing radius:
// psi_t = (4/3) * a / t^((2 - (kappa + 4l + b)) / 2) = (4/3) * epsilon_t.
// e_t lists the row coordinates the distance statistic reads.
struct DecoderParams {
  double a = 0.0;
  double b = 0.0;
  double kappa = 0.0;
  double l = 0.0;
  int t = 0;
  double psi_t = 0.0;
  std::vector<int> e_t;

  static DecoderParams make(double a, double b, double kappa, double l, int t,
                            std::vector<int> e_t);
};

// Centered quadratic distance statistic:
// Z = (1/t) sum_{k in e_t} [ (y_k - (cbar_k + lambda_k))^2 - y_k ].
// Its mean is exactly zero when y is Poisson with mean cbar + lambda.
double z_metric(const Eigen::VectorXi& y, const Eigen::VectorXd& affine_codeword,
                const Eigen::VectorXd& lambda, const std::vector<int>& e_t);

// True iff output y is accepted as message j: |Z(y; c_j)| <= psi_t.
bool identify(const Eigen::VectorXi& y, std::int64_t j, const Codebook& cb,
              const ChannelParams& ch, const DecoderParams& dp);

struct ErrorEstimate {
  int t = 0;
  std::int64_t m = 0;
  double kappa = 0.0;
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
  double psi_t = 0.0;
  std::int64_t trials = 0;

  // Type I: true message rejected. Aggregated over the evaluated messages;
  // the confidence half-width belongs to the message attaining the max.
  std::int64_t messages_evaluated = 0;
  double type1_max = 0.0;
  double type1_mean = 0.0;
  double type1_ci_halfwidth = 0.0;
  std::string type1_ci_method;  // "normal" or "wilson" (< 5 errors observed)

  // Type II: wrong message accepted, over sampled ordered pairs. Absent
  // (fields NaN, pairs_evaluated 0) when the codebook has fewer than two
  // codewords.
  bool type2_present = false;
  std::int64_t pairs_evaluated = 0;
  double type2_max = 0.0;
  double type2_mean = 0.0;
  double type2_ci_halfwidth = 0.0;
  std::string type2_ci_method;
};

// Monte Carlo error estimation at 95% confidence. Evaluates up to pair_cap
// messages (chosen by a seeded shuffle) with `trials` channel samples each
// for type I, and up to pair_cap sampled ordered pairs for type II. Every
// (unit, trial) runs on its own generator seeded as
// derive_seed(derive_seed(root_seed, 2 + unit), trial), so trials may be
// evaluated in any order or in parallel with identical results; aggregation
// uses exact integer error counts.
ErrorEstimate estimate_errors(const Codebook& cb, const ChannelParams& ch,
                              const DecoderParams& dp, std::int64_t trials,
                              std::uint64_t root_seed, std::int64_t pair_cap);

}  // namespace dapc
