#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace dapc {

// splitmix64 finalizer; used wherever one seed has to spawn others.
std::uint64_t mix64(std::uint64_t z) noexcept;

// Seed for stream `index` under `root`: mix64(root + index).
// Every generator and subset selection in the library derives its seeds
// through this function, so whole experiments replay bit-exactly from one
// root seed regardless of evaluation order.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept;

// Deterministic random source. std::mt19937_64 has a standard-specified
// output sequence, and every distribution below is implemented explicitly,
// so identical seeds give identical draws on any platform or toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi);

  // Unbiased uniform integer on [0, n); n >= 1.
  std::uint64_t uniform_int(std::uint64_t n);

  // Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double gaussian();

  // Poisson draw: sequential-search inversion for mu < 30, transformed
  // rejection (PTRS) otherwise. Both paths consume only this generator.
  std::int64_t poisson(double mu);

 private:
  std::int64_t poisson_inversion(double mu);
  std::int64_t poisson_ptrs(double mu);

  std::mt19937_64 engine_;
};

// Fisher-Yates shuffle driven by Rng::uniform_int.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.uniform_int(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace dapc
