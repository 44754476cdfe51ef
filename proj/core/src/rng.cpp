#include "dapc/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dapc {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept {
  return mix64(root + index);
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("Rng::uniform: lo > hi");
  return lo + uniform01() * (hi - lo);
}

std::uint64_t Rng::uniform_int(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::uniform_int: n must be >= 1");
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::gaussian() {
  // 1 - u keeps the argument of log strictly positive.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t Rng::poisson(double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("Rng::poisson: mu must be finite and >= 0");
  if (mu == 0.0) return 0;
  return mu < 30.0 ? poisson_inversion(mu) : poisson_ptrs(mu);
}

std::int64_t Rng::poisson_inversion(double mu) {
  const double u = uniform01();
  double p = std::exp(-mu);
  double cum = p;
  std::int64_t k = 0;
  // Cumulative search; the guard covers pathological rounding at the far tail.
  while (u > cum && k < 4000) {
    ++k;
    p *= mu / static_cast<double>(k);
    cum += p;
  }
  return k;
}

std::int64_t Rng::poisson_ptrs(double mu) {
  // Hormann's transformed rejection with squeeze, valid for mu >= 10.
  const double smu = std::sqrt(mu);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mu = std::log(mu);

  for (;;) {
    const double u = uniform01() - 0.5;
    const double v = uniform01();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mu + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double k = kf;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mu - mu - std::lgamma(k + 1.0)) {
      return static_cast<std::int64_t>(kf);
    }
  }
}

}  // namespace dapc
