#include "dminimax/topology.hpp"

#include <cmath>
#include <stdexcept>

namespace dminimax {

namespace {

double spectral_rho(const Eigen::MatrixXd& W) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(W, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  const long n = ev.size();
  if (n == 1) return 0.0;
  return std::max(std::abs(ev(n - 2)), std::abs(ev(0)));
}

}  // namespace

MixingMatrix ring_mixing(int nodes) {
  if (nodes < 3)
    throw std::invalid_argument("ring_mixing: need at least 3 nodes");
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int i = 0; i < nodes; ++i) {
    W(i, i) = 1.0 / 3.0;
    W(i, (i + 1) % nodes) = 1.0 / 3.0;
    W(i, (i + nodes - 1) % nodes) = 1.0 / 3.0;
  }
  return {W, spectral_rho(W), nodes};
}

MixingMatrix centralized_mixing(int nodes) {
  if (nodes < 1)
    throw std::invalid_argument("centralized_mixing: need at least 1 node");
  Eigen::MatrixXd W =
      Eigen::MatrixXd::Constant(nodes, nodes, 1.0 / static_cast<double>(nodes));
  return {W, 0.0, nodes};
}

MixingMatrix custom_mixing(const Eigen::MatrixXd& W) {
  if (W.rows() != W.cols() || W.rows() < 1)
    throw std::invalid_argument("custom_mixing: matrix must be square");
  const int n = static_cast<int>(W.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!(W(i, j) >= 0.0))
        throw std::invalid_argument("custom_mixing: negative entry");
      if (std::abs(W(i, j) - W(j, i)) > 1e-12)
        throw std::invalid_argument("custom_mixing: not symmetric");
    }
  const double tol = 1e-9;
  for (int i = 0; i < n; ++i) {
    if (std::abs(W.row(i).sum() - 1.0) > tol ||
        std::abs(W.col(i).sum() - 1.0) > tol)
      throw std::invalid_argument("custom_mixing: not doubly stochastic");
  }
  const double rho = spectral_rho(W);
  if (!(rho < 1.0 - 1e-12))
    throw std::invalid_argument(
        "custom_mixing: disconnected or non-contracting (rho >= 1)");
  return {W, rho, n};
}

std::vector<double> contraction_profile(const MixingMatrix& mixing, int k_max) {
  if (k_max < 1)
    throw std::invalid_argument("contraction_profile: k_max must be >= 1");
  const int n = mixing.nodes;
  const double mean = 1.0 / static_cast<double>(n);
  std::vector<double> out;
  out.reserve(k_max);
  Eigen::MatrixXd Wk = mixing.W;
  for (int k = 1; k <= k_max; ++k) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      // column i of W^k is W^k e_i
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        const double dev = mean - Wk(j, i);
        s += dev * dev;
      }
      worst = std::max(worst, std::sqrt(s));
    }
    out.push_back(worst);
    if (k < k_max) Wk = mixing.W * Wk;
  }
  return out;
}

int required_gossip_steps(double rho, double C) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("required_gossip_steps: rho must be in (0,1)");
  if (!(C > 0.0))
    throw std::invalid_argument("required_gossip_steps: C must be > 0");
  const double t = std::log1p(C) / std::log(1.0 / rho);
  // nudge guards against 2.0000000000000004-style rounding at integer targets
  const int steps = static_cast<int>(std::ceil(t - 1e-12));
  return steps < 1 ? 1 : steps;
}

Eigen::MatrixXd mixing_power(const MixingMatrix& mixing, int t) {
  if (t < 1) throw std::invalid_argument("mixing_power: t must be >= 1");
  Eigen::MatrixXd Wt = mixing.W;
  for (int s = 1; s < t; ++s) Wt = mixing.W * Wt;
  return Wt;
}

}  // namespace dminimax
