#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>

#include "dminimax/oracle.hpp"

namespace dminimax {

/// Two-branch scalar game: the sampled objective takes the c-scaled branch
/// with probability 1/3 and the unit branch with probability 2/3.  The
/// expected objective is
///   F(theta, alpha) = (c+2)/3 (theta - alpha) + theta^2 - alpha^2
///                     + kappa * theta * alpha
/// with a unique first-order Nash point in closed form.  G_inf and D are
/// declared over a bounding ball scaled from the equilibrium (the raw game
/// has unbounded gradient on the whole plane).
class StochasticScaledGame : public SaddleProblem {
 public:
  StochasticScaledGame(double c, double kappa_coupling, double box_scale = 10.0);

  std::size_t dim_theta() const override { return 1; }
  std::size_t dim_alpha() const override { return 1; }

  Vec expected_field(const Vec& y) const override;
  Vec sample_field(const Vec& y, RngStream& rng) const override;
  OracleConstants constants() const override { return constants_; }
  std::optional<JointPoint> known_fne() const override;
  std::optional<double> objective(const Vec& y) const override;

  double c() const { return c_; }
  double coupling() const { return kappa_; }
  /// Sup-norm radius of the monitored iterate box.
  double box_radius_inf() const { return box_inf_; }

 private:
  double c_;
  double kappa_;
  double box_inf_;
  OracleConstants constants_;
};

/// Pure bilinear coupling theta^T A alpha with optional additive Gaussian
/// gradient noise (truncated so the sup-norm bound stays honest).  The field
/// is skew: simultaneous descent cycles on it, which makes this the stress
/// problem for optimistic methods.
class BilinearGame : public SaddleProblem {
 public:
  BilinearGame(Eigen::MatrixXd coupling, double noise_sigma = 0.0,
               double domain_radius = 10.0);

  std::size_t dim_theta() const override { return static_cast<std::size_t>(A_.rows()); }
  std::size_t dim_alpha() const override { return static_cast<std::size_t>(A_.cols()); }

  Vec expected_field(const Vec& y) const override;
  Vec sample_field(const Vec& y, RngStream& rng) const override;
  OracleConstants constants() const override { return constants_; }
  std::optional<JointPoint> known_fne() const override;
  std::optional<double> objective(const Vec& y) const override;

 private:
  Eigen::MatrixXd A_;
  double sigma_;
  OracleConstants constants_;
};

/// Strongly-convex-strongly-concave quadratic
///   F = 1/2 theta^T P theta - 1/2 alpha^T Q alpha + theta^T C alpha
///       + b^T theta + e^T alpha
/// with P, Q symmetric positive definite.  The unique equilibrium solves
/// [P, C; -C^T, Q] z = -[b; e], computed once at construction.
class QuadraticSaddle : public SaddleProblem {
 public:
  QuadraticSaddle(Eigen::MatrixXd P, Eigen::MatrixXd Q, Eigen::MatrixXd C,
                  Eigen::VectorXd b, Eigen::VectorXd e, double noise_sigma = 0.0,
                  double domain_radius = 10.0);

  std::size_t dim_theta() const override { return static_cast<std::size_t>(P_.rows()); }
  std::size_t dim_alpha() const override { return static_cast<std::size_t>(Q_.rows()); }

  Vec expected_field(const Vec& y) const override;
  Vec sample_field(const Vec& y, RngStream& rng) const override;
  OracleConstants constants() const override { return constants_; }
  std::optional<JointPoint> known_fne() const override;
  std::optional<double> objective(const Vec& y) const override;

 private:
  Eigen::MatrixXd P_, Q_, C_;
  Eigen::VectorXd b_, e_;
  Eigen::MatrixXd K_;  // stacked field matrix [P, C; -C^T, Q]
  Eigen::VectorXd fne_;
  double sigma_;
  OracleConstants constants_;
};

struct MintyReport {
  double min_inner_product = 0.0;
  Vec argmin;
};

/// Samples `trials` points in the Euclidean ball of the given radius around
/// z_star (z_star itself is the first trial) and reports the smallest
/// <z - z_star, expected_field(z)>.  Nonnegative for every shipped problem.
MintyReport minty_check(const SaddleProblem& problem, const JointPoint& z_star,
                        int trials, double radius, RngStream& rng);

}  // namespace dminimax
