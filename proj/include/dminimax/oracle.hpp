#pragma once

#include <memory>
#include <optional>
#include <stdexcept>

#include "dminimax/joint_point.hpp"
#include "dminimax/rng.hpp"

namespace dminimax {

/// Problem-level constants backing the oracle contract and the rate bound.
struct OracleConstants {
  double lipschitz = 0.0;       // L
  double grad_inf_bound = 0.0;  // G_inf over the declared domain ball
  double noise_sigma = 0.0;     // sigma, sqrt of the gradient variance bound
  double domain_diameter = 0.0; // D; iterates are monitored against D/2
};

/// Stochastic saddle oracle. The field follows the sign convention
/// [grad_theta F, -grad_alpha F]: descent on it descends in theta and
/// ascends in alpha simultaneously. sample_field must be unbiased for
/// expected_field, with every draw bounded by grad_inf_bound in the
/// sup norm inside the declared domain ball.
class SaddleProblem {
 public:
  virtual ~SaddleProblem() = default;

  virtual std::size_t dim_theta() const = 0;
  virtual std::size_t dim_alpha() const = 0;
  std::size_t dim() const { return dim_theta() + dim_alpha(); }

  virtual Vec expected_field(const Vec& y) const = 0;
  virtual Vec sample_field(const Vec& y, RngStream& rng) const = 0;
  virtual OracleConstants constants() const = 0;
  virtual std::optional<JointPoint> known_fne() const { return std::nullopt; }

  /// Expected objective value, when available in closed form.
  virtual std::optional<double> objective(const Vec& /*y*/) const {
    return std::nullopt;
  }

  Vec expected_field(const JointPoint& y) const { return expected_field(y.data); }
};

/// Average of m independent samples at y: the minibatch gradient.
inline Vec minibatch_gradient(const SaddleProblem& problem, const Vec& y,
                              int batch, RngStream& rng) {
  if (batch < 1) throw std::invalid_argument("minibatch_gradient: batch < 1");
  Vec acc(y.size(), 0.0);
  for (int j = 0; j < batch; ++j) {
    Vec s = problem.sample_field(y, rng);
    for (std::size_t r = 0; r < acc.size(); ++r) acc[r] += s[r];
  }
  const double inv = 1.0 / static_cast<double>(batch);
  for (double& v : acc) v *= inv;
  return acc;
}

}  // namespace dminimax
