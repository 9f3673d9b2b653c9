#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dminimax/analysis.hpp"
#include "dminimax/sim.hpp"

namespace dminimax {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Typed view of a run-configuration document.  Every key has a documented
/// default except run.seed, which must be present.
struct ResolvedConfig {
  // [problem]
  std::string problem_type = "scaled_game";
  double c = 1010.0;
  double coupling = 0.01;       // the game coupling (scaled_game / bilinear / quadratic)
  double box_scale = 10.0;      // scaled_game iterate box, in units of ||z*||_inf
  double noise_sigma = 0.0;     // bilinear / quadratic additive gradient noise
  double domain_radius = 10.0;  // bilinear / quadratic monitored ball radius
  long p1 = 1, p2 = 1;
  double curvature_theta = 2.0;  // quadratic: P = curvature_theta I
  double curvature_alpha = 2.0;  // quadratic: Q = curvature_alpha I
  double linear_theta = 0.0;     // quadratic: b = linear_theta 1
  double linear_alpha = 0.0;     // quadratic: e = linear_alpha 1

  // [topology]
  std::string topology_type = "ring";
  int nodes = 5;
  int gossip_steps = 1;

  // [optimizer]
  std::string optimizer = "dadam3";
  double eta = 1e-2;
  double beta1 = 0.0;
  double lambda = 1.0;
  double beta2 = 0.999;
  double beta3 = 0.1;
  int batch = 1;
  bool growing_batch = false;
  double epsilon = 1e-8;
  double v_tilde_init = 0.0;

  // [run]
  long iterations = 200000;
  long record_every = 100;
  std::uint64_t seed = 0;
  bool shared_streams = false;
  double diverge_error = 10.0;
  double early_stop_e = 0.0;
};

/// Parses the sectioned key = value format.  Unknown sections or keys are
/// rejected by name; so are keys that do not apply to the selected problem
/// or topology type.
ResolvedConfig parse_config(const std::string& text);
ResolvedConfig load_config(const std::string& path);

/// Canonical serialization with every default expanded.
/// parse(serialize(x)) == x.
std::string serialize_config(const ResolvedConfig& cfg);

/// Builds the executable run (problem, mixing matrix, hyper-parameters).
RunConfig build_run(const ResolvedConfig& cfg);

/// Theorem-constant inputs implied by a configuration: problem constants,
/// topology rho, optimizer settings, G0 from the v_tilde init.
ConstantInputs constant_inputs_from(const ResolvedConfig& cfg);

}  // namespace dminimax
