#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dminimax/rng.hpp"

namespace dminimax {

/// A named convergence-hypothesis violation: which inequality failed.
class hypothesis_error : public std::runtime_error {
 public:
  hypothesis_error(std::string which, const std::string& detail)
      : std::runtime_error(which + ": " + detail), which_(std::move(which)) {}
  const std::string& which() const { return which_; }

 private:
  std::string which_;
};

struct ConstantInputs {
  double G0 = 1.0;      // sqrt of the smallest admissible v_tilde init
  double G_inf = 1.0;   // sup-norm gradient bound
  double L = 1.0;       // gradient Lipschitz constant
  double sigma = 0.0;   // gradient noise level
  double D = 1.0;       // domain diameter bound
  double rho = 0.5;     // mixing contraction parameter
  int t = 1;            // gossip steps per iteration
  double eta = 1e-2;
  double beta1_1 = 0.0;
  double lambda_decay = 0.5;  // the beta1 schedule ratio (kappa)
  double beta2 = 0.9;
  double beta3 = 0.1;
  int nodes = 1;   // M
  int dim = 1;     // d
};

struct TheoremConstants {
  ConstantInputs in;
  double gamma = 0.0;  // beta1_1 / beta2
  double u_c = 0.0;    // (1-b3)(1-b1)(1-b2)(1-gamma)
  double C0 = 0.0, C1 = 0.0, C2 = 0.0, C3 = 0.0;
  double B1 = 0.0, B2 = 0.0, B3 = 0.0;  // B_i = C_i / C0
};

/// Evaluates the constants block of the rate bound, after checking every
/// stated hypothesis.  Throws hypothesis_error naming the first inequality
/// that fails ("step-size bound", "beta1 bound", "C0 positive", ...).
TheoremConstants compute_constants(const ConstantInputs& in);

struct BatchSchedule {
  bool growing = false;  // batch k+1 at iteration k
  int constant = 1;
};

/// Right-hand side of the rate bound:
///   B1/N + B2/(M N) * sum_k sigma^2/m_k + B3 M rho^t / (1 - rho^t).
double theorem_bound(const TheoremConstants& tc, long N,
                     const BatchSchedule& schedule);

enum class ComplexityRow { fixed_batch, growing_batch, many_nodes };

struct ComplexitySetting {
  long batch = 1;       // first batch size; grows as k+1 when growing
  bool growing = false;
  long nodes = 1;       // M
  double C = 1.0;
  int t = 1;
  long N = 1;
};

/// The three per-row settings that reach an epsilon-accurate point:
/// (m ~ eps^-2, M ~ 1, C ~ eps^-2), (m_k = k+1, M ~ 1, C ~ eps^-2),
/// (m ~ 1, M ~ eps^-2, C ~ eps^-4); N ~ eps^-2 and t from the gossip rule.
ComplexitySetting complexity_setting(ComplexityRow row, double epsilon,
                                     double rho);

struct HadamardReport {
  int trials = 0;
  int violations = 0;
  double worst_relative_slack = 0.0;  // most negative margin seen
  std::string witness;                // serialized matrices of the worst case
};

/// Property test of seven Hadamard-product norm inequalities on random
/// H x M matrices; a violation is a left side exceeding the right side by
/// more than 1e-10 relative slack.
HadamardReport hadamard_property_suite(int trials, int rows, int cols,
                                       RngStream& rng);

}  // namespace dminimax
