#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "dapc/codebook.hpp"
#include "dapc/rng.hpp"

using dapc::ChannelParams;
using dapc::Codebook;

TEST_CASE("packing_radius hand values") {
  // Exponent (2 - (1 + 0 + 1))/2 = 0: epsilon = 1, r0 = sqrt(4 * 1) = 2.
  const dapc::PackingRadius p1 = dapc::packing_radius(1.0, 1.0, 1.0, 0.0, 4);
  CHECK(p1.epsilon_t == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p1.r0 == doctest::Approx(2.0).epsilon(1e-12));

  const dapc::PackingRadius p2 =
      dapc::packing_radius(2.0, 0.0, 0.8, 0.05, 16);
  CHECK(p2.epsilon_t == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p2.r0 == doctest::Approx(2.8284271247461903).epsilon(1e-12));
}

TEST_CASE("packing_radius validates its domain") {
  CHECK_THROWS_AS(dapc::packing_radius(0.0, 0.0, 1.0, 0.0, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(dapc::packing_radius(1.0, -0.1, 1.0, 0.0, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(dapc::packing_radius(1.0, 0.0, 0.0, 0.0, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(dapc::packing_radius(1.0, 0.0, 1.1, 0.0, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(dapc::packing_radius(1.0, 0.0, 1.0, 1.0, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(dapc::packing_radius(1.0, 0.0, 1.0, 0.0, 0),
                  std::invalid_argument);
}

TEST_CASE("greedy packing on the unit interval jams at two codewords") {
  // Candidates are uniform in [0, 1]; a third codeword would need the exact
  // endpoint-and-midpoint configuration {0, 0.5, 1}, which random candidates
  // never produce, so the packing jams at m = 2 and the probe finds no room.
  const ChannelParams ch =
      ChannelParams::make_const(dapc::gen_identity(1), 1.0, 0.1);
  const dapc::ReductionMap red = dapc::svd_reduction(ch.abar);
  const Codebook cb =
      dapc::construct_greedy(ch, red, 1.0, 1.0, 0.25, 50000, 20260815);
  CHECK(cb.m() == 2);
  CHECK(dapc::min_distance_reduced(cb) >= 0.5);
  CHECK(cb.saturation_count == 0);
  CHECK(cb.saturated);
}

TEST_CASE("greedy packing separates every accepted pair") {
  const ChannelParams ch =
      ChannelParams::make_const(dapc::gen_identity(3), 1.0, 0.1);
  const dapc::ReductionMap red = dapc::svd_reduction(ch.abar);
  const Codebook cb =
      dapc::construct_greedy(ch, red, 2.0, 2.0, 0.5, 4000, 31337);
  REQUIRE(cb.m() >= 2);
  for (Eigen::Index i = 0; i < cb.m(); ++i) {
    for (Eigen::Index j = i + 1; j < cb.m(); ++j) {
      CHECK((cb.reduced.row(i) - cb.reduced.row(j)).norm() >=
            1.0 - 1e-12);
    }
  }
  // Identity channel with unit gain: the affine image is the codeword
  // itself and the reduction preserves all pairwise distances.
  CHECK(cb.affine.isApprox(cb.original, 1e-12));
  for (Eigen::Index i = 0; i < cb.m(); ++i) {
    for (Eigen::Index j = i + 1; j < cb.m(); ++j) {
      CHECK((cb.reduced.row(i) - cb.reduced.row(j)).norm() ==
            doctest::Approx((cb.original.row(i) - cb.original.row(j)).norm())
                .epsilon(1e-9));
    }
  }
  // Codewords live in the candidate box.
  CHECK(cb.original.minCoeff() >= 0.0);
  CHECK(cb.original.maxCoeff() <= 2.0);
}

TEST_CASE("construction is deterministic in the seed") {
  const ChannelParams ch =
      ChannelParams::make_const(dapc::gen_identity(2), 1.0, 0.1);
  const dapc::ReductionMap red = dapc::svd_reduction(ch.abar);
  const Codebook a = dapc::construct_greedy(ch, red, 2.0, 2.0, 0.4, 500, 1);
  const Codebook b = dapc::construct_greedy(ch, red, 2.0, 2.0, 0.4, 500, 1);
  const Codebook c = dapc::construct_greedy(ch, red, 2.0, 2.0, 0.4, 500, 2);
  CHECK(a.original == b.original);
  CHECK(a.original != c.original);
}

TEST_CASE("a budget of one accepts exactly the first candidate") {
  const ChannelParams ch =
      ChannelParams::make_const(dapc::gen_identity(2), 1.0, 0.1);
  const dapc::ReductionMap red = dapc::svd_reduction(ch.abar);
  const Codebook cb = dapc::construct_greedy(ch, red, 1.0, 1.0, 0.3, 1, 5);
  CHECK(cb.m() == 1);
  CHECK_THROWS_AS(dapc::min_distance_reduced(cb), std::invalid_argument);
}

TEST_CASE("saturation probe sees room when the radius is tiny") {
  const ChannelParams ch =
      ChannelParams::make_const(dapc::gen_identity(2), 1.0, 0.1);
  const dapc::ReductionMap red = dapc::svd_reduction(ch.abar);
  const Codebook cb =
      dapc::construct_greedy(ch, red, 2.0, 2.0, 0.01, 5, 7);
  dapc::Rng rng(8);
  CHECK(dapc::saturation_probe(cb, ch, red, 200, rng) > 0);
}

TEST_CASE("achieved_rate formula") {
  CHECK(dapc::achieved_rate(8, 4) == doctest::Approx(3.0 / 8.0));
  CHECK(dapc::achieved_rate(1, 8) == doctest::Approx(0.0));
  CHECK(dapc::achieved_rate(16, 16) == doctest::Approx(1.0 / 16.0));
  CHECK_THROWS_AS(dapc::achieved_rate(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(dapc::achieved_rate(0, 4), std::invalid_argument);
}
