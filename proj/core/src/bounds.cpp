#include "dapc/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dapc {
namespace {

void check_kappa_l(double kappa, double l) {
  if (!(kappa > 0.0) || !(kappa <= 1.0))
    throw std::invalid_argument("kappa must lie in (0, 1]");
  if (!(l >= 0.0) || !(l < 1.0))
    throw std::invalid_argument("l must lie in [0, 1)");
}

}  // namespace

CapacityBounds capacity_bounds(double kappa, double l) {
  check_kappa_l(kappa, l);
  CapacityBounds cb;
  cb.kappa = kappa;
  cb.l = l;
  cb.lower = 0.5 - (kappa / 4.0 + l);
  const bool kappa_below_one = kappa < 1.0;
  cb.upper = 0.5 + kappa + l + (kappa_below_one ? 2.0 * l : 0.0);
  cb.regime = kappa_below_one ? "kappa_below_one" : "kappa_equal_one";
  cb.lower_meaningful = l < 0.25;
  cb.lower_clamped = std::max(cb.lower, 0.0);
  return cb;
}

double converse_threshold(double c_max, double kappa, double l, double b,
                          int t) {
  check_kappa_l(kappa, l);
  if (!(c_max > 0.0))
    throw std::invalid_argument("converse_threshold: c_max must be positive");
  if (!(b >= 0.0))
    throw std::invalid_argument("converse_threshold: b must be >= 0");
  if (t < 1) throw std::invalid_argument("converse_threshold: t must be >= 1");
  const double delta = kappa == 1.0 ? 1.0 : 0.0;
  const double exponent = kappa * (1.0 - l * delta) + 2.0 * l + b;
  return c_max / std::pow(static_cast<double>(t), exponent);
}

std::pair<double, double> density_bounds(int t) {
  if (t < 1) throw std::invalid_argument("density_bounds: t must be >= 1");
  return {std::exp2(-static_cast<double>(t)),
          std::exp2(-0.599 * static_cast<double>(t))};
}

CodebookSize codebook_size(double r, int t) {
  if (!(r >= 0.0)) throw std::invalid_argument("codebook_size: r must be >= 0");
  if (t < 1) throw std::invalid_argument("codebook_size: t must be >= 1");
  CodebookSize cs;
  cs.log2_value = static_cast<double>(t) * std::log2(static_cast<double>(t)) * r;
  cs.value = std::exp2(cs.log2_value);
  return cs;
}

double type1_bound(double f_k_max, double a_max, double v_max, double c_avg,
                   double lambda_max, int t, double psi_t) {
  if (!(f_k_max >= 1.0))
    throw std::invalid_argument("type1_bound: f_k_max must be >= 1");
  if (!(a_max > 0.0) || !(v_max > 0.0) || !(c_avg > 0.0) ||
      !(lambda_max > 0.0))
    throw std::invalid_argument(
        "type1_bound: a_max, v_max, c_avg, lambda_max must be positive");
  if (t < 1) throw std::invalid_argument("type1_bound: t must be >= 1");
  if (!(psi_t > 0.0))
    throw std::invalid_argument("type1_bound: psi_t must be positive");
  const double a = f_k_max * (a_max * v_max * c_avg + lambda_max);
  const double u = a * a * a * a + a * a * a + a * a + a;
  return 7.0 * u / (static_cast<double>(t) * psi_t * psi_t);
}

double sphere_volume(int t, double r) {
  if (t < 1) throw std::invalid_argument("sphere_volume: t must be >= 1");
  if (!(r >= 0.0)) throw std::invalid_argument("sphere_volume: r must be >= 0");
  const double half_t = static_cast<double>(t) / 2.0;
  return std::pow(std::numbers::pi, half_t) *
         std::pow(r, static_cast<double>(t)) /
         std::tgamma(half_t + 1.0);
}

}  // namespace dapc
