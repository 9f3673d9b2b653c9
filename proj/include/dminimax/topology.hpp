#pragma once

#include <Eigen/Dense>

#include <vector>

namespace dminimax {

/// Doubly stochastic symmetric mixing matrix with its spectral contraction
/// parameter rho = max{|sigma_2|, |sigma_M|} < 1 (eigenvalues sorted
/// descending).  Validated at construction; never silently renormalized.
struct MixingMatrix {
  Eigen::MatrixXd W;
  double rho = 0.0;
  int nodes = 0;
};

/// Ring of M >= 3 nodes: 1/3 on the diagonal, the first off-diagonals and the
/// wrap-around corners.
MixingMatrix ring_mixing(int nodes);

/// Complete averaging W = (1/M) 1 1^T; rho = 0.
MixingMatrix centralized_mixing(int nodes);

/// Validates a user matrix: square, nonnegative, symmetric, doubly stochastic
/// within 1e-9, rho < 1.  Throws std::invalid_argument naming the failure.
MixingMatrix custom_mixing(const Eigen::MatrixXd& W);

/// max_i || (1/M) 1 - W^k e_i || for k = 1..k_max.  Each value is bounded by
/// rho^k.
std::vector<double> contraction_profile(const MixingMatrix& mixing, int k_max);

/// Smallest integer t with t >= log(1+C) / log(1/rho).
int required_gossip_steps(double rho, double C);

/// W^t, cached by the simulator so the per-iteration averaging is a single
/// multiply.
Eigen::MatrixXd mixing_power(const MixingMatrix& mixing, int t);

}  // namespace dminimax
