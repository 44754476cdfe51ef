#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "dapc/channel.hpp"
#include "dapc/codebook.hpp"

namespace dapc {

// Fourth raw moment of Poisson(lambda) in closed form:
// E[X^4] = lambda^4 + 6 lambda^3 + 7 lambda^2 + lambda.
// It upper-bounds the centered fourth moment E[(X - lambda)^4] = 3 lambda^2
// + lambda, so any bound proved against this form also caps the centered
// one.
double poisson_moment4_exact(double lambda);

struct McEstimate {
  double estimate = 0.0;
  double stderr_est = 0.0;
  std::int64_t samples = 0;
};

// Monte Carlo estimate of the fourth raw moment E[X^4] with its standard
// error; the independent check for poisson_moment4_exact.
McEstimate poisson_moment4_mc(double lambda, std::int64_t samples, Rng& rng);

// Independent volume estimate of the reduced image of [0, c_avg]^N. Maps
// `samples` uniform box samples through abar and the reduction, lays a dense
// grid over the axis-aligned bounding box of the images (cell size = box
// diagonal / 512) and marks the cells they occupy, then hit-tests `samples`
// fresh uniform points of the bounding box against the occupied cells; the
// estimate is hit fraction times bounding-box volume. The stderr surrogate
// is the total volume of surface cells (occupied cells with an unoccupied
// axis neighbor or on the box hull), the band where the discretization can
// over- or under-count. Requires t <= 3.
McEstimate zonotope_volume_mc(const Eigen::MatrixXd& abar,
                              const ReductionMap& red, double c_avg,
                              std::int64_t samples, Rng& rng);

struct PairwiseReport {
  std::int64_t pairs_total = 0;
  std::int64_t pairs_satisfying = 0;  // some coordinate separates the pair
  double fraction = 0.0;
};

// For every ordered codeword pair (i1, i2), checks whether some coordinate k
// has |1 - d_k(i2) / d_k(i1)| > theta_t, where d_k(i) = affine_ik + lambda_k.
// Diagnostic only: no pass/fail is attached to the fraction.
PairwiseReport converse_pairwise_report(const Codebook& cb,
                                        const ChannelParams& ch,
                                        double theta_t);

struct SubmatrixSvReport {
  double min_sv_mean = 0.0;  // mean over trials of the smallest singular value
  double min_sv_min = 0.0;   // smallest observed anywhere
  double max_sv_max = 0.0;   // largest observed anywhere
  // Trials where a singular value exceeded 1 + 1e-9 or more than k - t of
  // them fell below 1 - 1e-9.
  std::int64_t bound_violations = 0;
  std::int64_t trials = 0;
};

// Samples Haar-ish random k x k orthogonal matrices (QR of a Gaussian matrix
// with the R diagonal made positive) and reports singular-value statistics
// of the leading t x t submatrix. The count bound (at most k - t singular
// values below one) is checked per trial; the observed minima document how
// far below one the smallest singular value actually sits.
SubmatrixSvReport unitary_submatrix_sv_report(int k, int t,
                                              std::int64_t trials, Rng& rng);

// One row of the verification battery: a closed-form value against an
// independent oracle with a named tolerance.
struct OracleReport {
  std::string name;
  double closed_form_value = 0.0;
  double oracle_value = 0.0;
  double tolerance = 0.0;
  std::string tolerance_kind;  // "abs" or "rel"
  bool pass = false;
  std::int64_t samples_or_cases = 0;
};

// Fills pass from the stored values: |closed - oracle| <= tolerance, with
// "rel" measured against |closed|.
OracleReport make_report(std::string name, double closed, double oracle,
                         double tolerance, std::string tolerance_kind,
                         std::int64_t samples_or_cases);

}  // namespace dapc
