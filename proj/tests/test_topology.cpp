#include <doctest.h>

#include <cmath>

#include "dminimax/rng.hpp"
#include "dminimax/topology.hpp"

using namespace dminimax;

namespace {

// random symmetric doubly stochastic matrix by alternating row normalization
// with symmetrization (Sinkhorn-style, converges for strictly positive input)
Eigen::MatrixXd random_doubly_stochastic(int n, std::uint64_t seed) {
  RngStream rng(seed, 0, 0);
  Eigen::MatrixXd W(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) W(i, j) = rng.uniform() + 0.1;
  W = 0.5 * (W + W.transpose()).eval();
  for (int it = 0; it < 500; ++it) {
    for (int i = 0; i < n; ++i) W.row(i) /= W.row(i).sum();
    W = 0.5 * (W + W.transpose()).eval();
  }
  return W;
}

}  // namespace

TEST_CASE("ring of five") {
  const MixingMatrix m = ring_mixing(5);
  CHECK(m.W(0, 0) == 1.0 / 3.0);
  CHECK(m.W(0, 1) == 1.0 / 3.0);
  CHECK(m.W(0, 2) == 0.0);
  CHECK(m.W(0, 3) == 0.0);
  CHECK(m.W(0, 4) == 1.0 / 3.0);
  // circulant eigenvalues (1/3)(1 + 2 cos(2 pi j / 5))
  const double pi = 3.14159265358979323846;
  const double expect = (1.0 + 2.0 * std::cos(2.0 * pi / 5.0)) / 3.0;
  CHECK(std::abs(m.rho - expect) < 1e-12);
  CHECK(std::abs(m.rho - 0.539345) < 1e-6);
}

TEST_CASE("ring of three is complete averaging") {
  const MixingMatrix m = ring_mixing(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(m.W(i, j) == 1.0 / 3.0);
  CHECK(m.rho < 1e-12);
}

TEST_CASE("ring needs at least three nodes") {
  CHECK_THROWS_AS(ring_mixing(2), std::invalid_argument);
}

TEST_CASE("centralized averaging") {
  const MixingMatrix m = centralized_mixing(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(m.W(i, j) == 0.2);
  CHECK(m.rho == 0.0);
  // idempotent projector
  CHECK(((m.W * m.W - m.W).cwiseAbs().maxCoeff()) < 1e-14);
  CHECK(centralized_mixing(1).W(0, 0) == 1.0);
}

TEST_CASE("custom matrix validation") {
  CHECK_THROWS_WITH_AS(custom_mixing(Eigen::MatrixXd::Identity(4, 4)),
                       "custom_mixing: disconnected or non-contracting (rho >= 1)",
                       std::invalid_argument);

  // two disconnected rings share the eigenvalue 1
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(6, 6);
  block.topLeftCorner(3, 3) = ring_mixing(3).W;
  block.bottomRightCorner(3, 3) = ring_mixing(3).W;
  CHECK_THROWS_AS(custom_mixing(block), std::invalid_argument);

  const MixingMatrix ring = ring_mixing(5);
  const MixingMatrix again = custom_mixing(ring.W);
  CHECK(again.rho == doctest::Approx(ring.rho).epsilon(1e-14));

  Eigen::MatrixXd off = ring.W;
  off(0, 0) += 1e-6;
  off(1, 1) -= 1e-6;
  CHECK_THROWS_WITH_AS(custom_mixing(off), "custom_mixing: not doubly stochastic",
                       std::invalid_argument);

  Eigen::MatrixXd neg = ring.W;
  neg(0, 0) = -neg(0, 0);
  CHECK_THROWS_AS(custom_mixing(neg), std::invalid_argument);
}

TEST_CASE("constructed matrices are doubly stochastic to 1e-12") {
  for (const MixingMatrix& m :
       {ring_mixing(3), ring_mixing(8), centralized_mixing(6),
        custom_mixing(random_doubly_stochastic(7, 99))}) {
    for (int i = 0; i < m.nodes; ++i) {
      CHECK(std::abs(m.W.row(i).sum() - 1.0) < 1e-12);
      CHECK(std::abs(m.W.col(i).sum() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("contraction profile obeys the rho^k bound") {
  SUBCASE("centralized collapses in one step") {
    const auto prof = contraction_profile(centralized_mixing(6), 5);
    for (double v : prof) CHECK(v < 1e-15);
  }
  SUBCASE("ring of five") {
    const MixingMatrix m = ring_mixing(5);
    const auto prof = contraction_profile(m, 10);
    CHECK(prof[0] <= m.rho + 1e-12);
    CHECK(prof[9] <= std::pow(m.rho, 10) + 1e-12);
    CHECK(prof[9] <= 2.07e-3);
  }
}

TEST_CASE("contraction profile on random matrices: bound and monotonicity") {
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(trial % 9);
    const MixingMatrix m =
        custom_mixing(random_doubly_stochastic(n, 1000 + trial));
    const auto prof = contraction_profile(m, 50);
    for (int k = 1; k <= 50; ++k) {
      CHECK(prof[k - 1] <= std::pow(m.rho, k) + 1e-12);
      if (k > 1) CHECK(prof[k - 1] <= prof[k - 2] + 1e-15);
    }
  }
}

TEST_CASE("cached powers match repeated multiplication") {
  const MixingMatrix m = ring_mixing(7);
  Eigen::MatrixXd acc = m.W;
  for (int t = 2; t <= 6; ++t) {
    acc = m.W * acc;
    CHECK(((mixing_power(m, t) - acc).cwiseAbs().maxCoeff()) < 1e-12);
  }
}

TEST_CASE("gossip step count") {
  CHECK(required_gossip_steps(0.5, 1.0) == 1);
  CHECK(required_gossip_steps(0.5, 3.0) == 2);
  CHECK(required_gossip_steps(0.539345, 100.0) == 8);
  CHECK_THROWS_AS(required_gossip_steps(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(required_gossip_steps(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(required_gossip_steps(0.5, 0.0), std::invalid_argument);
}
