#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "dapc/channel.hpp"

namespace dapc {

struct PackingRadius {
  double epsilon_t = 0.0;  // a / t^((2 - (kappa + 4l + b)) / 2)
  double r0 = 0.0;         // sqrt(t * epsilon_t)
};

// Sphere radius for packing codewords in the reduced space. a > 0, b >= 0,
// kappa in (0, 1], l in [0, 1), t >= 1.
PackingRadius packing_radius(double a, double b, double kappa, double l,
                             int t);

// Codebook over a channel: original codewords in [0, c_avg]^N together with
// their images through abar (affine) and through the rank reduction
// (reduced). Any two reduced rows are at distance >= 2*r0.
struct Codebook {
  Eigen::MatrixXd original;  // M x N
  Eigen::MatrixXd affine;    // M x K, abar * original rows
  Eigen::MatrixXd reduced;   // M x T, u_t' * affine rows
  double r0 = 0.0;
  double c_avg = 0.0;
  double c_max = 0.0;
  std::uint64_t seed = 0;
  std::int64_t candidate_budget = 0;
  bool saturated = false;
  // Admissible new centers found by the post-construction probe
  // (candidate_budget / 10 attempts); 0 means the probe saw no room left.
  std::int64_t saturation_count = 0;

  std::int64_t m() const { return original.rows(); }
};

// Random sequential packing: draws candidate_budget candidates uniformly in
// [0, c_avg]^N, maps each through abar and the reduction, and accepts a
// candidate iff its reduced image is >= 2*r0 from every accepted one (the
// first candidate is always accepted). Deterministic given seed: candidates
// use derive_seed(seed, 0) and the saturation probe uses derive_seed(seed, 1).
Codebook construct_greedy(const ChannelParams& ch, const ReductionMap& red,
                          double c_avg, double c_max, double r0,
                          std::int64_t candidate_budget, std::uint64_t seed);

// Smallest pairwise Euclidean distance between reduced rows. Undefined for
// fewer than two codewords and signalled distinctly in that case
// (std::invalid_argument naming the condition).
double min_distance_reduced(const Codebook& cb);

// Draws `probes` fresh uniform candidates and counts how many could still be
// added at separation 2*r0. A zero count is evidence of saturation.
std::int64_t saturation_probe(const Codebook& cb, const ChannelParams& ch,
                              const ReductionMap& red, std::int64_t probes,
                              Rng& rng);

// Identification rate achieved by m messages at reduced dimension t >= 2:
// log2(m) / (t log2 t).
double achieved_rate(std::int64_t m, int t);

}  // namespace dapc
