#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "dminimax/oracle.hpp"
#include "dminimax/worker_pool.hpp"

namespace dminimax {

/// Shared hyper-parameters.  beta1 follows the schedule
/// beta1_k = beta1_1 * lambda_decay^(k-1); lambda_decay = 1 keeps it constant.
struct HyperParams {
  double eta = 1e-2;
  double beta1_1 = 0.0;
  double lambda_decay = 1.0;
  double beta2 = 0.999;
  double beta3 = 0.0;
  int batch = 1;
  bool growing_batch = false;  // batch size k+1 at iteration k
  int gossip_steps = 1;        // t: times the local averaging is applied
  double epsilon_floor = 1e-8;
  double v_tilde_init = 0.0;   // scalar init of the monotone second moment
};

double beta1_at(const HyperParams& hp, long k);
int batch_at(const HyperParams& hp, long k);

/// Per-node optimizer registers.  v_tilde is the element-wise monotone
/// second moment; d the scaled direction used for both the lookahead and
/// the parameter update.  DOSG reuses d for its previous raw gradient and
/// DP-OAdam for its previous bias-corrected direction.
struct Adam3State {
  Vec x, z, m, v, v_tilde, d;
  long step = 0;
};

Adam3State make_adam3_state(std::size_t dim, double v_tilde_init = 0.0);

/// One iteration of the single-node adaptive momentum method:
///   z = x - eta d;  g = minibatch at z;
///   m = b1_k m + (1-b1_k) g;  v = b2 v + (1-b2) g.g;
///   vt = b3 vt + (1-b3) max(vt, v);  d = m / sqrt(vt + eps);  x = x - eta d.
/// Returns false if any register went non-finite (state kept for post-mortem).
bool adam3_step(Adam3State& state, const SaddleProblem& problem,
                const HyperParams& hp, std::uint64_t master_seed);

/// Column-stacked per-node states.  Column i is node i exactly.
struct SwarmState {
  std::vector<Adam3State> nodes;

  std::size_t size() const { return nodes.size(); }
  long step() const { return nodes.empty() ? 0 : nodes[0].step; }
};

SwarmState make_swarm(int nodes, std::size_t dim, double v_tilde_init = 0.0);

/// Decentralized variant: Z = (X - eta D) W^t, per-node minibatch at z_i,
/// the same moment updates as adam3_step, then X = (X - eta D) W^t.
/// Node i draws from the (seed, i, k) stream; with shared_streams every node
/// draws from (seed, 0, k).  Safe to parallelize over nodes: results do not
/// depend on the worker count.
bool dadam3_step(SwarmState& swarm, const Eigen::MatrixXd& Wt,
                 const SaddleProblem& problem, const HyperParams& hp,
                 std::uint64_t master_seed, bool shared_streams = false,
                 WorkerPool* pool = nullptr);

/// Decentralized optimistic stochastic gradient: the two mixing points of
/// dadam3_step with raw gradients in place of adaptive directions.
bool dosg_step(SwarmState& swarm, const Eigen::MatrixXd& Wt,
               const SaddleProblem& problem, const HyperParams& hp,
               std::uint64_t master_seed, bool shared_streams = false,
               WorkerPool* pool = nullptr);

/// Decentralized parallel optimistic Adam baseline: per-node Adam moments
/// with standard bias correction (constant beta1 = beta1_1) and the two-term
/// optimistic step x <- (x - 2 eta dhat_k + eta dhat_{k-1}) W^t.
bool dp_oadam_step(SwarmState& swarm, const Eigen::MatrixXd& Wt,
                   const SaddleProblem& problem, const HyperParams& hp,
                   std::uint64_t master_seed, bool shared_streams = false,
                   WorkerPool* pool = nullptr);

/// Column mean of the z registers.
Vec swarm_mean_z(const SwarmState& swarm);

/// Largest per-coordinate spread (max - min) across columns, over z and x.
double swarm_column_spread(const SwarmState& swarm);

bool swarm_finite(const SwarmState& swarm);

}  // namespace dminimax
