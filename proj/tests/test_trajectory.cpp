#include <doctest.h>

#include <random>

#include <Eigen/LU>

#include "stogram/direct_fim.hpp"
#include "stogram/trajectory_info.hpp"
#include "test_util.hpp"

using namespace stogram;
using namespace stogram::testing;

TEST_CASE("trajectory FIM scalar w = 2 blocks") {
  // phi = c = q = r = 1:
  //   D_0 = 1/r + phi^2/q = 2, D_1 = 1/r + 1/q = 2, E_0 = -1.
  auto sys = scalar_unit_system(1);
  const auto traj = assemble_trajectory_fim(sys, 2);
  REQUIRE(traj.m.rows() == 2);
  Matrix expected(2, 2);
  expected << 2, -1, -1, 2;
  CHECK(rel_err(traj.m, expected) < 1e-14);
  CHECK(traj.block_dim == 1);
  CHECK(traj.window == 2);
}

TEST_CASE("trajectory FIM w = 1 reduces to the measurement term") {
  auto sys = scalar_unit_system(2);
  const auto traj = assemble_trajectory_fim(sys, 1);
  CHECK(traj.m.rows() == 1);
  CHECK(traj.m(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("trajectory FIM is block tridiagonal and symmetric") {
  std::mt19937 rng(401);
  auto sys = random_system(rng, 2, 1, 6);
  const int w = 5, n = 2;
  const auto traj = assemble_trajectory_fim(sys, w);
  CHECK((traj.m - traj.m.transpose()).norm() == 0.0);
  for (int bi = 0; bi < w; ++bi)
    for (int bj = 0; bj < w; ++bj)
      if (std::abs(bi - bj) > 1)
        CHECK(traj.m.block(bi * n, bj * n, n, n).isZero(0.0));
}

TEST_CASE("inverse corners equal inverse window Gramians") {
  std::mt19937 rng(409);
  for (int trial = 0; trial < 15; ++trial) {
    auto sys = random_system(rng, 2, 2, 7);
    std::uniform_int_distribution<int> wdist(1, 8);
    const int w = wdist(rng);
    const auto report = corner_check(sys, w);
    CHECK(report.ok);
    CHECK(report.obs_corner_rel_err < 1e-7);
    CHECK(report.cons_corner_rel_err < 1e-7);
  }
}

TEST_CASE("corner check on the scalar example by hand") {
  // w = 2 trajectory FIM [[2,-1],[-1,2]], inverse [[2/3,1/3],[1/3,2/3]];
  // obs FIM = 1.5 and cons FIM = 1.5 so both corners are 2/3.
  auto sys = scalar_unit_system(1);
  const auto traj = assemble_trajectory_fim(sys, 2);
  const Matrix inv = traj.m.inverse();
  CHECK(inv(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  const auto obs = obs_fim_direct(sys, 2);
  CHECK(1.0 / obs.m(0, 0) == doctest::Approx(inv(0, 0)).epsilon(1e-12));
  CHECK(corner_check(sys, 2).ok);
}

TEST_CASE("corner check refuses windows above the dense cap") {
  auto sys = scalar_unit_system(kTrajectoryDenseCap + 2);
  const auto report = corner_check(sys, kTrajectoryDenseCap + 1);
  CHECK_FALSE(report.ok);
  CHECK(report.message.find("cap") != std::string::npos);
}

TEST_CASE("intermediate state info matches the inverse diagonal block") {
  std::mt19937 rng(419);
  for (int trial = 0; trial < 10; ++trial) {
    auto sys = random_system(rng, 2, 1, 6);
    const int w = 5, n = 2;
    const auto traj = assemble_trajectory_fim(sys, w);
    const Matrix inv = Eigen::FullPivLU<Matrix>(traj.m)
                           .solve(Matrix::Identity(w * n, w * n));
    for (int k = 0; k < w; ++k) {
      const auto info = intermediate_state_info(sys, w, k);
      const Matrix block_inv =
          Eigen::FullPivLU<Matrix>(info.m).solve(Matrix::Identity(n, n));
      CHECK(rel_err(block_inv, inv.block(k * n, k * n, n, n)) < 1e-6);
    }
  }
}

TEST_CASE("intermediate state info at the window ends recovers the Gramians") {
  std::mt19937 rng(421);
  auto sys = random_system(rng, 2, 1, 5);
  const int w = 4;
  const auto at_start = intermediate_state_info(sys, w, 0);
  CHECK(rel_err(at_start.m, obs_fim_direct(sys, w).m) < 1e-8);
  const auto at_end = intermediate_state_info(sys, w, w - 1);
  CHECK(rel_err(at_end.m, cons_fim_direct(subhorizon(sys, 0, w - 1), w).m) < 1e-8);
}
