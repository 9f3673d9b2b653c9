#include <doctest.h>

#include <cmath>

#include "dminimax/oracle.hpp"
#include "dminimax/problems.hpp"

using namespace dminimax;

TEST_CASE("join/split round trip") {
  const JointPoint y = join({1.0, 2.0}, {3.0});
  CHECK(y.dim() == 3);
  CHECK(y.p1 == 2);
  const auto [theta, alpha] = split(y);
  CHECK(theta == Vec{1.0, 2.0});
  CHECK(alpha == Vec{3.0});
}

TEST_CASE("join with an empty minimizer block") {
  const JointPoint y = join({}, {5.0});
  CHECK(y.p1 == 0);
  CHECK(y.dim() == 1);
  CHECK(y.alpha() == Vec{5.0});
}

TEST_CASE("join of the scaled-game equilibrium") {
  const StochasticScaledGame game(1010.0, 0.01);
  const JointPoint fne = *game.known_fne();
  const JointPoint y = join(fne.theta(), fne.alpha());
  CHECK(y.data[0] == doctest::Approx(-167.819).epsilon(1e-5));
  CHECK(y.data[1] == doctest::Approx(-169.506).epsilon(1e-5));
}

TEST_CASE("join rejects non-finite entries by coordinate") {
  CHECK_THROWS_WITH_AS(join({1.0, std::nan("")}, {0.0}),
                       "join: non-finite entry at theta[1]",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(join({}, {std::numeric_limits<double>::infinity()}),
                       "join: non-finite entry at alpha[0]",
                       std::invalid_argument);
}

TEST_CASE("minibatch of a deterministic oracle is the exact field") {
  Eigen::MatrixXd A(1, 1);
  A << 2.5;
  const BilinearGame game(A, 0.0);
  RngStream rng(7, 0, 1);
  const Vec y = {2.0, 3.0};
  for (int batch : {1, 4, 33}) {
    const Vec g = minibatch_gradient(game, y, batch, rng);
    CHECK(g[0] == 7.5);
    CHECK(g[1] == -5.0);
  }
}

TEST_CASE("minibatch rejects an empty batch") {
  Eigen::MatrixXd A(1, 1);
  A << 1.0;
  const BilinearGame game(A);
  RngStream rng(7, 0, 1);
  CHECK_THROWS_AS(minibatch_gradient(game, {0.0, 0.0}, 0, rng),
                  std::invalid_argument);
}

TEST_CASE("large minibatch mean approaches the expected field") {
  const double c = 1010.0;
  const StochasticScaledGame game(c, 0.01);
  RngStream rng(11, 0, 1);
  const int batch = 100000;
  const Vec g = minibatch_gradient(game, {0.0, 0.0}, batch, rng);
  // theta coordinate at the origin has mean (c+2)/3 and branch std
  const double sigma = std::sqrt(2.0 / 9.0) * (c - 1.0);
  const double tol = 3.0 * sigma / std::sqrt(static_cast<double>(batch));
  CHECK(std::abs(g[0] - (c + 2.0) / 3.0) < tol);
  CHECK(std::abs(g[1] - (c + 2.0) / 3.0) < tol);
}

TEST_CASE("a single sample is one of the two branch gradients") {
  const double c = 1010.0, k = 0.01;
  const StochasticScaledGame game(c, k);
  const Vec y = {1.5, -2.0};
  for (int i = 0; i < 50; ++i) {
    RngStream rng(3, 0, static_cast<std::uint64_t>(i));
    const Vec g = minibatch_gradient(game, y, 1, rng);
    const double base0 = 2.0 * y[0] + k * y[1];
    const double base1 = 2.0 * y[1] - k * y[0];
    const bool branch_c = g[0] == base0 + c && g[1] == base1 + c;
    const bool branch_1 = g[0] == base0 + 1.0 && g[1] == base1 + 1.0;
    CHECK((branch_c || branch_1));
  }
}

namespace {

std::vector<std::shared_ptr<const SaddleProblem>> shipped_problems() {
  Eigen::MatrixXd A(2, 1);
  A << 1.0, -0.5;
  Eigen::MatrixXd P(2, 2), Q(1, 1), C(2, 1);
  P << 3.0, 0.5, 0.5, 2.0;
  Q << 4.0;
  C << 1.0, -1.0;
  Eigen::VectorXd b(2), e(1);
  b << 0.3, -0.7;
  e << 1.1;
  return {
      std::make_shared<StochasticScaledGame>(1010.0, 0.01),
      std::make_shared<BilinearGame>(A, 0.5),
      std::make_shared<QuadraticSaddle>(P, Q, C, b, e, 0.25),
  };
}

Vec random_point(const SaddleProblem& p, RngStream& rng, double scale) {
  Vec y(p.dim());
  for (auto& v : y) v = scale * (2.0 * rng.uniform() - 1.0);
  return y;
}

}  // namespace

TEST_CASE("samplers are unbiased for the expected field") {
  int point_id = 0;
  for (const auto& p : shipped_problems()) {
    const double sigma = p->constants().noise_sigma;
    for (int pt = 0; pt < 20; ++pt) {
      RngStream point_rng(100, 0, static_cast<std::uint64_t>(point_id));
      const Vec y = random_point(*p, point_rng, 3.0);
      const Vec field = p->expected_field(y);
      const int n = 100000;
      Vec mean(p->dim(), 0.0);
      RngStream rng(200, 1, static_cast<std::uint64_t>(point_id++));
      for (int s = 0; s < n; ++s) {
        const Vec g = p->sample_field(y, rng);
        for (std::size_t r = 0; r < mean.size(); ++r) mean[r] += g[r];
      }
      const double tol = 4.0 * sigma / std::sqrt(static_cast<double>(n)) + 1e-12;
      for (std::size_t r = 0; r < mean.size(); ++r)
        CHECK(std::abs(mean[r] / n - field[r]) < tol);
    }
  }
}

TEST_CASE("field matches central differences of the objective") {
  for (const auto& p : shipped_problems()) {
    RngStream rng(42, 0, 0);
    const double h = 1e-5;
    for (int pt = 0; pt < 10; ++pt) {
      const Vec y = random_point(*p, rng, 5.0);
      const Vec field = p->expected_field(y);
      for (std::size_t r = 0; r < y.size(); ++r) {
        Vec hi = y, lo = y;
        hi[r] += h;
        lo[r] -= h;
        const double diff = (*p->objective(hi) - *p->objective(lo)) / (2.0 * h);
        // alpha block carries the flipped sign in the field convention
        const double expect = r < p->dim_theta() ? diff : -diff;
        CHECK(field[r] == doctest::Approx(expect).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("streams are a pure function of (seed, node, iteration)") {
  for (int rep = 0; rep < 3; ++rep) {
    RngStream a(123, 4, 56), b(123, 4, 56);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  }
  RngStream a(123, 4, 56), b(123, 4, 57), c(123, 5, 56), d(124, 4, 56);
  const double va = a.uniform();
  CHECK(va != b.uniform());
  CHECK(va != c.uniform());
  CHECK(va != d.uniform());
}

TEST_CASE("sample sequences replay without replaying the whole run") {
  const StochasticScaledGame game(50.0, 0.1);
  Vec later;
  {
    RngStream rng(9, 2, 1000);
    later = game.sample_field({1.0, 1.0}, rng);
  }
  // draws at other (node, iteration) keys do not disturb the keyed stream
  for (std::uint64_t it = 0; it < 5; ++it) {
    RngStream rng(9, 0, it);
    (void)game.sample_field({0.5, -0.5}, rng);
  }
  RngStream rng(9, 2, 1000);
  CHECK(game.sample_field({1.0, 1.0}, rng) == later);
}
