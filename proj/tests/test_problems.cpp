#include <doctest.h>

#include <cmath>

#include "dminimax/problems.hpp"

using namespace dminimax;

TEST_CASE("expected field vanishes at the equilibrium") {
  for (double k : {0.0, 0.3, 1.0}) {
    const StochasticScaledGame game(1.0, k);
    const Vec g = game.expected_field(game.known_fne()->data);
    CHECK(norm2(g) < 1e-12);
  }
}

TEST_CASE("expected field at the origin is the mean branch constant") {
  const StochasticScaledGame game(1010.0, 0.01);
  const Vec g = game.expected_field({0.0, 0.0});
  CHECK(g[0] == doctest::Approx(1012.0 / 3.0).epsilon(1e-14));
  CHECK(g[1] == doctest::Approx(1012.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("bilinear field is [A alpha, -A^T theta]") {
  Eigen::MatrixXd A(1, 1);
  A << 1.0;
  const BilinearGame game(A);
  const Vec g = game.expected_field({2.0, 3.0});
  CHECK(g[0] == 3.0);
  CHECK(g[1] == -2.0);
}

TEST_CASE("degenerate stochasticity at c = 1") {
  const StochasticScaledGame game(1.0, 0.2);
  RngStream rng(5, 0, 0);
  for (int i = 0; i < 20; ++i) {
    const Vec y = {rng.gaussian(), rng.gaussian()};
    CHECK(game.sample_field(y, rng) == game.expected_field(y));
  }
}

TEST_CASE("branch frequency is one third") {
  const double c = 1010.0;
  const StochasticScaledGame game(c, 0.01);
  RngStream rng(17, 0, 0);
  int c_branch = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const Vec g = game.sample_field({0.0, 0.0}, rng);
    if (g[0] == c) ++c_branch;
  }
  CHECK(std::abs(static_cast<double>(c_branch) / n - 1.0 / 3.0) < 0.01);
}

TEST_CASE("branch variance matches the closed form") {
  const double c = 1010.0;
  const StochasticScaledGame game(c, 0.01);
  RngStream rng(23, 0, 0);
  const int n = 1000000;
  const double mean = (c + 2.0) / 3.0;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec g = game.sample_field({0.0, 0.0}, rng);
    acc += (g[0] - mean) * (g[0] - mean);
  }
  const double expect = 2.0 / 9.0 * (c - 1.0) * (c - 1.0);
  CHECK(std::abs(acc / n - expect) / expect < 0.05);
}

TEST_CASE("closed-form equilibrium values") {
  {
    const StochasticScaledGame game(1.0, 0.0);
    const JointPoint fne = *game.known_fne();
    CHECK(fne.data[0] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(fne.data[1] == doctest::Approx(-0.5).epsilon(1e-15));
  }
  {
    const StochasticScaledGame game(1010.0, 0.01);
    const JointPoint fne = *game.known_fne();
    CHECK(fne.data[0] == doctest::Approx(-167.819).epsilon(1e-5));
    CHECK(fne.data[1] == doctest::Approx(-169.506).epsilon(1e-5));
  }
}

TEST_CASE("equilibrium is stationary for random game parameters") {
  RngStream rng(31, 0, 0);
  for (int i = 0; i < 100; ++i) {
    const double c = 1.0 + 1999.0 * rng.uniform();
    const double k = rng.uniform();
    const StochasticScaledGame game(c, k);
    CHECK(norm2(game.expected_field(game.known_fne()->data)) <= 1e-10);
  }
}

TEST_CASE("minty condition on the scaled game") {
  const StochasticScaledGame game(1010.0, 0.01);
  RngStream rng(37, 0, 0);
  const MintyReport report =
      minty_check(game, *game.known_fne(), 1000, 1000.0, rng);
  CHECK(report.min_inner_product >= 0.0);
}

TEST_CASE("minty condition on the skew bilinear game holds with equality") {
  Eigen::MatrixXd A(2, 2);
  A << 1.0, 0.25, -0.5, 2.0;
  const BilinearGame game(A);
  RngStream rng(41, 0, 0);
  const MintyReport report =
      minty_check(game, *game.known_fne(), 1000, 50.0, rng);
  CHECK(std::abs(report.min_inner_product) <= 1e-12);
}

TEST_CASE("minty check includes the reference point itself") {
  const StochasticScaledGame game(7.0, 0.5);
  RngStream rng(43, 0, 0);
  const MintyReport report = minty_check(game, *game.known_fne(), 1, 10.0, rng);
  CHECK(report.min_inner_product == 0.0);
  CHECK(report.argmin == game.known_fne()->data);
}

TEST_CASE("minty condition on the quadratic saddle") {
  Eigen::MatrixXd P(2, 2), Q(2, 2), C(2, 2);
  P << 2.0, 0.3, 0.3, 1.5;
  Q << 1.0, 0.0, 0.0, 3.0;
  C << 0.5, -1.0, 0.2, 0.7;
  Eigen::VectorXd b(2), e(2);
  b << 1.0, -2.0;
  e << 0.5, 0.25;
  const QuadraticSaddle game(P, Q, C, b, e);
  CHECK(norm2(game.expected_field(game.known_fne()->data)) <= 1e-10);
  RngStream rng(47, 0, 0);
  const MintyReport report =
      minty_check(game, *game.known_fne(), 500, 50.0, rng);
  CHECK(report.min_inner_product >= -1e-12);
}

TEST_CASE("samples respect the declared sup-norm bound inside the domain") {
  Eigen::MatrixXd A(1, 2);
  A << 0.8, -1.2;
  Eigen::MatrixXd P = 2.0 * Eigen::MatrixXd::Identity(1, 1);
  Eigen::MatrixXd Q = 1.0 * Eigen::MatrixXd::Identity(1, 1);
  Eigen::MatrixXd C = Eigen::MatrixXd::Constant(1, 1, 0.4);
  Eigen::VectorXd b = Eigen::VectorXd::Constant(1, 0.5);
  Eigen::VectorXd e = Eigen::VectorXd::Constant(1, -0.25);
  const std::vector<std::shared_ptr<const SaddleProblem>> problems = {
      std::make_shared<StochasticScaledGame>(1010.0, 0.01),
      std::make_shared<BilinearGame>(A, 0.3),
      std::make_shared<QuadraticSaddle>(P, Q, C, b, e, 0.2),
  };
  for (const auto& p : problems) {
    const auto consts = p->constants();
    const double radius = consts.domain_diameter / 2.0;
    RngStream rng(53, 0, 0);
    for (int i = 0; i < 100000; ++i) {
      Vec y(p->dim());
      double n2 = 0.0;
      for (auto& v : y) {
        v = rng.gaussian();
        n2 += v * v;
      }
      const double scale = radius * rng.uniform() / std::sqrt(n2);
      for (auto& v : y) v *= scale;
      CHECK(norm_inf(p->sample_field(y, rng)) <= consts.grad_inf_bound);
    }
  }
}

TEST_CASE("field is Lipschitz with the declared constant") {
  Eigen::MatrixXd A(2, 1);
  A << 1.5, -0.5;
  const std::vector<std::shared_ptr<const SaddleProblem>> problems = {
      std::make_shared<StochasticScaledGame>(1010.0, 0.01),
      std::make_shared<BilinearGame>(A),
  };
  CHECK(problems[0]->constants().lipschitz ==
        doctest::Approx(std::sqrt(4.0 + 0.01 * 0.01)).epsilon(1e-15));
  for (const auto& p : problems) {
    const double L = p->constants().lipschitz;
    RngStream rng(59, 0, 0);
    for (int i = 0; i < 1000; ++i) {
      Vec y1(p->dim()), y2(p->dim()), diff(p->dim());
      for (auto& v : y1) v = 20.0 * (rng.uniform() - 0.5);
      for (auto& v : y2) v = 20.0 * (rng.uniform() - 0.5);
      const Vec g1 = p->expected_field(y1);
      const Vec g2 = p->expected_field(y2);
      for (std::size_t r = 0; r < diff.size(); ++r) diff[r] = y1[r] - y2[r];
      Vec gdiff(p->dim());
      for (std::size_t r = 0; r < gdiff.size(); ++r) gdiff[r] = g1[r] - g2[r];
      CHECK(norm2(gdiff) <= L * norm2(diff) * (1.0 + 1e-12) + 1e-12);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(StochasticScaledGame(0.5, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(StochasticScaledGame(2.0, -0.1), std::invalid_argument);
  Eigen::MatrixXd A(1, 1);
  A << 1.0;
  CHECK_THROWS_AS(BilinearGame(A, -1.0), std::invalid_argument);
  Eigen::MatrixXd P(2, 2), Q(1, 1), C(1, 1);
  P.setIdentity();
  Q.setIdentity();
  C.setZero();
  CHECK_THROWS_AS(QuadraticSaddle(P, Q, C, Eigen::VectorXd::Zero(2),
                                  Eigen::VectorXd::Zero(1)),
                  std::invalid_argument);
}

TEST_CASE("pure minimization instance: empty alpha block") {
  Eigen::MatrixXd P = 2.0 * Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd Q(0, 0), C(2, 0);
  Eigen::VectorXd b(2), e(0);
  b << -6.0, 2.0;
  const QuadraticSaddle game(P, Q, C, b, e);
  const JointPoint fne = *game.known_fne();
  CHECK(fne.data[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fne.data[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(game.dim_alpha() == 0);
}
