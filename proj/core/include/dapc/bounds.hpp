#pragma once

#include <string>
#include <utility>

namespace dapc {

// Capacity band for identification over the channel family, parameterized by
// the growth exponent kappa = ln K / ln N and the superposition exponent l.
struct CapacityBounds {
  double kappa = 0.0;
  double l = 0.0;
  double lower = 0.0;  // 1/2 - (kappa/4 + l), raw formula value
  double upper = 0.0;  // 1/2 + kappa + l + 2*[kappa < 1]*l
  std::string regime;  // "kappa_equal_one" or "kappa_below_one"
  // The lower bound stops being meaningful once l >= 1/4; we keep the raw
  // value above for transparency and clamp here for reporting.
  bool lower_meaningful = true;
  double lower_clamped = 0.0;  // max(lower, 0)
};

// kappa must lie in (0, 1], l in [0, 1). The regime split is exact equality
// on the input: kappa == 1 selects "kappa_equal_one".
CapacityBounds capacity_bounds(double kappa, double l);

// Pairwise-distinguishability threshold used by the converse argument:
// c_max / t^(kappa*(1 - l*[kappa == 1]) + 2l + b).
double converse_threshold(double c_max, double kappa, double l, double b,
                          int t);

// (2^-t, 2^(-0.599 t)): the saturated-packing density band. Reported only;
// nothing in the library asserts that a constructed packing attains it.
std::pair<double, double> density_bounds(int t);

struct CodebookSize {
  double value = 0.0;       // 2^((t log2 t) r)
  double log2_value = 0.0;  // (t log2 t) r
};

// Number of messages at rate r and reduced dimension t.
CodebookSize codebook_size(double r, int t);

// Chebyshev-style bound on the probability of rejecting the true message:
// 7U / (t psi_t^2) with U = A^4 + A^3 + A^2 + A and
// A = f_k_max * (a_max * v_max * c_avg + lambda_max).
double type1_bound(double f_k_max, double a_max, double v_max, double c_avg,
                   double lambda_max, int t, double psi_t);

// Volume of the Euclidean t-ball of radius r: pi^(t/2) r^t / Gamma(t/2 + 1).
double sphere_volume(int t, double r);

}  // namespace dapc
