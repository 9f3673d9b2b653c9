#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dminimax/optim.hpp"
#include "dminimax/topology.hpp"

namespace dminimax {

enum class OptimizerKind { adam3, dadam3, dosg, dp_oadam };

OptimizerKind optimizer_from_name(const std::string& name);
std::string optimizer_name(OptimizerKind kind);

/// One experiment: an optimizer driven over a problem/topology pair.
struct RunConfig {
  std::shared_ptr<const SaddleProblem> problem;
  MixingMatrix mixing;
  OptimizerKind optimizer = OptimizerKind::dadam3;
  HyperParams hp;
  long iterations = 200000;
  long record_every = 100;
  std::uint64_t seed = 0;
  bool shared_streams = false;
  /// Relative-error divergence threshold (needs a known equilibrium).
  double diverge_error = 10.0;
  /// Stop once e_k <= this value; 0 disables.
  double early_stop_e = 0.0;
  int threads = 1;
};

/// Metrics are evaluated on the expected (analytic) field at the averaged
/// iterate, matching how the convergence curves are defined.
struct MetricsRecord {
  long k = 0;
  double e = 0.0;          // ||zbar - z*|| / ||z*||, NaN when z* unknown
  double grad_sq = 0.0;    // ||grad F(zbar)||^2
  double R = 0.0;          // prefix mean of the recorded grad_sq values
  double consensus = 0.0;  // (1/M) sum_i ||z_i - zbar||^2
  bool box_violation = false;
  bool diverged = false;
};

struct MetricsSeries {
  std::vector<MetricsRecord> rows;
  bool diverged = false;
  long diverged_at = -1;
  bool any_box_violation = false;
  /// Mean of ||grad F(zbar_k)||^2 over every iteration run (not just the
  /// record grid); what the rate bound is compared against.
  double mean_grad_sq_all = 0.0;
  long total_iterations = 0;
};

MetricsSeries run(const RunConfig& config);

/// Column mean of Z as a joint point.
JointPoint mean_iterate(const SwarmState& swarm, std::size_t p1);

/// Runs every config with the same master seed; all must share the
/// iteration count and record grid.
std::vector<MetricsSeries> compare(const std::vector<RunConfig>& configs,
                                   std::uint64_t shared_seed);

/// CSV with header k,e,grad_sq,R,consensus,diverged, one row per grid point,
/// 17 significant digits (round-trip exact for doubles).
std::string metrics_to_csv(const MetricsSeries& series);
MetricsSeries metrics_from_csv(const std::string& text);

}  // namespace dminimax
