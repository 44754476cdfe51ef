#include <benchmark/benchmark.h>

#include <cstdint>

#include "dapc/affinity.hpp"
#include "dapc/channel.hpp"
#include "dapc/codebook.hpp"
#include "dapc/idcodec.hpp"
#include "dapc/rng.hpp"

namespace {

void BM_PoissonSmallMu(benchmark::State& state) {
  dapc::Rng rng(42);
  std::int64_t acc = 0;
  for (auto _ : state) acc += rng.poisson(3.7);
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_PoissonSmallMu);

void BM_PoissonLargeMu(benchmark::State& state) {
  dapc::Rng rng(42);
  std::int64_t acc = 0;
  for (auto _ : state) acc += rng.poisson(250.0);
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_PoissonLargeMu);

void BM_ZMetric(benchmark::State& state) {
  const auto t = static_cast<int>(state.range(0));
  dapc::Rng rng(7);
  Eigen::VectorXi y(t);
  Eigen::VectorXd c(t);
  Eigen::VectorXd lambda = Eigen::VectorXd::Constant(t, 0.1);
  std::vector<int> e_t(t);
  for (int i = 0; i < t; ++i) {
    c(i) = 1.0 + rng.uniform01();
    y(i) = static_cast<int>(rng.poisson(c(i) + 0.1));
    e_t[i] = i;
  }
  double acc = 0.0;
  for (auto _ : state) acc += dapc::z_metric(y, c, lambda, e_t);
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_ZMetric)->Arg(16)->Arg(64)->Arg(256);

void BM_SvdReduction(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const dapc::SparseGenResult gen =
      dapc::gen_random_sparse(n, n, 0.4, 0.5, 2.0, 99);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dapc::svd_reduction(gen.matrix.entries));
  }
}
BENCHMARK(BM_SvdReduction)->Arg(16)->Arg(48);

void BM_GreedyConstruction(benchmark::State& state) {
  const auto t = static_cast<int>(state.range(0));
  const dapc::ChannelParams ch =
      dapc::ChannelParams::make_const(dapc::gen_identity(t), 1.0, 0.1);
  const dapc::ReductionMap red = dapc::svd_reduction(ch.abar);
  const dapc::PackingRadius pr = dapc::packing_radius(1.0, 0.4, 1.0, 0.0, t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dapc::construct_greedy(ch, red, 2.0, 4.0, pr.r0, 2000, 11));
  }
}
BENCHMARK(BM_GreedyConstruction)->Arg(8)->Arg(16);

void BM_ZonotopeVolumeExhaustive(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const dapc::SparseGenResult gen =
      dapc::gen_random_sparse(3, n, 0.6, 0.5, 2.0, 123);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dapc::zonotope_volume(
        gen.matrix.entries, 3, 1.0, dapc::VolumeMode::exhaustive));
  }
}
BENCHMARK(BM_ZonotopeVolumeExhaustive)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
