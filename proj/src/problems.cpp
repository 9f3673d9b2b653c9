#include "dminimax/problems.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dminimax {

namespace {

Eigen::VectorXd to_eigen(const Vec& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size()));
}

Vec from_eigen(const Eigen::VectorXd& v) {
  return Vec(v.data(), v.data() + v.size());
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

// Gaussian noise clipped at 8 sigma: keeps samples unbiased (symmetric
// truncation) while the sup-norm bound G_inf stays finite.
constexpr double kNoiseClip = 8.0;

double clipped_gaussian(RngStream& rng) {
  double g = rng.gaussian();
  return std::min(kNoiseClip, std::max(-kNoiseClip, g));
}

void check_finite_point(const Vec& y, std::size_t want_dim, const char* who) {
  if (y.size() != want_dim)
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  if (!all_finite(y))
    throw std::invalid_argument(std::string(who) + ": non-finite point");
}

}  // namespace

// ---------------------------------------------------------------------------
// StochasticScaledGame

StochasticScaledGame::StochasticScaledGame(double c, double kappa_coupling,
                                           double box_scale)
    : c_(c), kappa_(kappa_coupling) {
  if (c < 1.0) throw std::invalid_argument("StochasticScaledGame: c must be >= 1");
  if (kappa_coupling < 0.0)
    throw std::invalid_argument("StochasticScaledGame: coupling must be >= 0");
  if (box_scale <= 0.0)
    throw std::invalid_argument("StochasticScaledGame: box_scale must be > 0");

  const auto fne = known_fne();
  box_inf_ = box_scale * norm_inf(fne->data);
  // Ball enclosing the sup-norm box; the iterate bound is a 2-norm bound.
  const double ball = std::sqrt(2.0) * box_inf_;
  constants_.domain_diameter = 2.0 * ball;
  constants_.lipschitz = std::sqrt(4.0 + kappa_ * kappa_);
  // max |row of [[2,k],[-k,2]] . z| over the ball, plus the worst branch term
  constants_.grad_inf_bound = constants_.lipschitz * ball + c_;
  // both coordinates share the branch draw, so the vector variance is
  // 2 * Var(branch constant) = 4 (c-1)^2 / 9
  constants_.noise_sigma = 2.0 * (c_ - 1.0) / 3.0;
}

Vec StochasticScaledGame::expected_field(const Vec& y) const {
  check_finite_point(y, 2, "scaled_game.expected_field");
  const double mean_branch = (c_ + 2.0) / 3.0;
  return {2.0 * y[0] + kappa_ * y[1] + mean_branch,
          2.0 * y[1] - kappa_ * y[0] + mean_branch};
}

Vec StochasticScaledGame::sample_field(const Vec& y, RngStream& rng) const {
  check_finite_point(y, 2, "scaled_game.sample_field");
  const double branch = rng.uniform() < 1.0 / 3.0 ? c_ : 1.0;
  return {2.0 * y[0] + kappa_ * y[1] + branch,
          2.0 * y[1] - kappa_ * y[0] + branch};
}

std::optional<JointPoint> StochasticScaledGame::known_fne() const {
  const double s = -(c_ + 2.0) / (3.0 * kappa_ * kappa_ + 12.0);
  return join({s * (2.0 - kappa_)}, {s * (2.0 + kappa_)});
}

std::optional<double> StochasticScaledGame::objective(const Vec& y) const {
  check_finite_point(y, 2, "scaled_game.objective");
  return (c_ + 2.0) / 3.0 * (y[0] - y[1]) + y[0] * y[0] - y[1] * y[1] +
         kappa_ * y[0] * y[1];
}

// ---------------------------------------------------------------------------
// BilinearGame

BilinearGame::BilinearGame(Eigen::MatrixXd coupling, double noise_sigma,
                           double domain_radius)
    : A_(std::move(coupling)), sigma_(noise_sigma) {
  if (sigma_ < 0.0) throw std::invalid_argument("BilinearGame: sigma must be >= 0");
  if (domain_radius <= 0.0)
    throw std::invalid_argument("BilinearGame: domain_radius must be > 0");
  constants_.domain_diameter = 2.0 * domain_radius;
  constants_.lipschitz = spectral_norm(A_);
  constants_.grad_inf_bound =
      constants_.lipschitz * domain_radius + kNoiseClip * sigma_;
  // per-coordinate clipped-gaussian noise across d coordinates
  constants_.noise_sigma = sigma_ * std::sqrt(static_cast<double>(dim()));
}

Vec BilinearGame::expected_field(const Vec& y) const {
  check_finite_point(y, dim(), "bilinear.expected_field");
  Eigen::VectorXd v = to_eigen(y);
  Eigen::VectorXd out(v.size());
  out.head(A_.rows()) = A_ * v.tail(A_.cols());
  out.tail(A_.cols()) = -A_.transpose() * v.head(A_.rows());
  return from_eigen(out);
}

Vec BilinearGame::sample_field(const Vec& y, RngStream& rng) const {
  Vec g = expected_field(y);
  if (sigma_ > 0.0)
    for (double& v : g) v += sigma_ * clipped_gaussian(rng);
  return g;
}

std::optional<JointPoint> BilinearGame::known_fne() const {
  return join(Vec(dim_theta(), 0.0), Vec(dim_alpha(), 0.0));
}

std::optional<double> BilinearGame::objective(const Vec& y) const {
  check_finite_point(y, dim(), "bilinear.objective");
  Eigen::VectorXd v = to_eigen(y);
  return v.head(A_.rows()).dot(A_ * v.tail(A_.cols()));
}

// ---------------------------------------------------------------------------
// QuadraticSaddle

QuadraticSaddle::QuadraticSaddle(Eigen::MatrixXd P, Eigen::MatrixXd Q,
                                 Eigen::MatrixXd C, Eigen::VectorXd b,
                                 Eigen::VectorXd e, double noise_sigma,
                                 double domain_radius)
    : P_(std::move(P)), Q_(std::move(Q)), C_(std::move(C)), b_(std::move(b)),
      e_(std::move(e)), sigma_(noise_sigma) {
  const long p1 = P_.rows();
  const long p2 = Q_.rows();
  if (P_.cols() != p1 || Q_.cols() != p2 || C_.rows() != p1 || C_.cols() != p2 ||
      b_.size() != p1 || e_.size() != p2)
    throw std::invalid_argument("QuadraticSaddle: inconsistent block shapes");
  if (sigma_ < 0.0) throw std::invalid_argument("QuadraticSaddle: sigma must be >= 0");

  const long d = p1 + p2;
  K_.setZero(d, d);
  K_.topLeftCorner(p1, p1) = P_;
  K_.topRightCorner(p1, p2) = C_;
  K_.bottomLeftCorner(p2, p1) = -C_.transpose();
  K_.bottomRightCorner(p2, p2) = Q_;

  // stationarity of the signed field: P th + C al = -b and Q al - C^T th = e
  Eigen::VectorXd rhs(d);
  rhs.head(p1) = -b_;
  rhs.tail(p2) = e_;
  fne_ = K_.partialPivLu().solve(rhs);

  constants_.domain_diameter = 2.0 * domain_radius;
  constants_.lipschitz = spectral_norm(K_);
  const double affine_inf = std::max(
      b_.size() ? b_.lpNorm<Eigen::Infinity>() : 0.0,
      e_.size() ? e_.lpNorm<Eigen::Infinity>() : 0.0);
  constants_.grad_inf_bound =
      constants_.lipschitz * domain_radius + affine_inf + kNoiseClip * sigma_;
  constants_.noise_sigma = sigma_ * std::sqrt(static_cast<double>(dim()));
}

Vec QuadraticSaddle::expected_field(const Vec& y) const {
  check_finite_point(y, dim(), "quadratic.expected_field");
  Eigen::VectorXd v = to_eigen(y);
  Eigen::VectorXd out = K_ * v;
  out.head(P_.rows()) += b_;
  out.tail(Q_.rows()) -= e_;
  return from_eigen(out);
}

Vec QuadraticSaddle::sample_field(const Vec& y, RngStream& rng) const {
  Vec g = expected_field(y);
  if (sigma_ > 0.0)
    for (double& v : g) v += sigma_ * clipped_gaussian(rng);
  return g;
}

std::optional<JointPoint> QuadraticSaddle::known_fne() const {
  JointPoint y;
  y.data = from_eigen(fne_);
  y.p1 = dim_theta();
  return y;
}

std::optional<double> QuadraticSaddle::objective(const Vec& y) const {
  check_finite_point(y, dim(), "quadratic.objective");
  Eigen::VectorXd v = to_eigen(y);
  Eigen::VectorXd th = v.head(P_.rows());
  Eigen::VectorXd al = v.tail(Q_.rows());
  return 0.5 * th.dot(P_ * th) - 0.5 * al.dot(Q_ * al) + th.dot(C_ * al) +
         b_.dot(th) + e_.dot(al);
}

// ---------------------------------------------------------------------------

MintyReport minty_check(const SaddleProblem& problem, const JointPoint& z_star,
                        int trials, double radius, RngStream& rng) {
  if (trials < 1) throw std::invalid_argument("minty_check: trials < 1");
  const std::size_t d = problem.dim();
  MintyReport report;
  report.min_inner_product = std::numeric_limits<double>::infinity();

  auto probe = [&](const Vec& z) {
    Vec g = problem.expected_field(z);
    // extended precision: the skew part cancels only up to rounding
    long double inner = 0.0L;
    for (std::size_t r = 0; r < d; ++r)
      inner += static_cast<long double>(z[r] - z_star.data[r]) *
               static_cast<long double>(g[r]);
    const double val = static_cast<double>(inner);
    if (val < report.min_inner_product) {
      report.min_inner_product = val;
      report.argmin = z;
    }
  };

  probe(z_star.data);
  for (int trial = 1; trial < trials; ++trial) {
    Vec dir(d);
    double n2 = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      dir[r] = rng.gaussian();
      n2 += dir[r] * dir[r];
    }
    const double scale =
        radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d)) /
        std::max(std::sqrt(n2), 1e-300);
    Vec z(d);
    for (std::size_t r = 0; r < d; ++r) z[r] = z_star.data[r] + scale * dir[r];
    probe(z);
  }
  return report;
}

}  // namespace dminimax
