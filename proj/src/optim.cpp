#include "dminimax/optim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace dminimax {

double beta1_at(const HyperParams& hp, long k) {
  if (k < 1) throw std::invalid_argument("beta1_at: k must be >= 1");
  if (hp.beta1_1 == 0.0) return 0.0;
  return hp.beta1_1 * std::pow(hp.lambda_decay, static_cast<double>(k - 1));
}

int batch_at(const HyperParams& hp, long k) {
  if (hp.growing_batch) {
    const long m = k + 1;
    return m > 1000000 ? 1000000 : static_cast<int>(m);
  }
  return hp.batch;
}

Adam3State make_adam3_state(std::size_t dim, double v_tilde_init) {
  Adam3State s;
  s.x.assign(dim, 0.0);
  s.z.assign(dim, 0.0);
  s.m.assign(dim, 0.0);
  s.v.assign(dim, 0.0);
  s.v_tilde.assign(dim, v_tilde_init);
  s.d.assign(dim, 0.0);
  return s;
}

SwarmState make_swarm(int nodes, std::size_t dim, double v_tilde_init) {
  SwarmState sw;
  sw.nodes.reserve(nodes);
  for (int i = 0; i < nodes; ++i)
    sw.nodes.push_back(make_adam3_state(dim, v_tilde_init));
  return sw;
}

namespace {

bool vec_finite(const Vec& v) { return all_finite(v); }

bool state_finite(const Adam3State& s) {
  return vec_finite(s.x) && vec_finite(s.z) && vec_finite(s.m) &&
         vec_finite(s.v) && vec_finite(s.v_tilde) && vec_finite(s.d);
}

// Moment and direction update shared by adam3_step and dadam3_step; both
// paths must run exactly this code for the one-node reduction to stay
// bitwise.
void adam3_update_node(Adam3State& s, const Vec& g, double beta1_k,
                       const HyperParams& hp) {
  const std::size_t d = s.x.size();
  for (std::size_t r = 0; r < d; ++r) {
    s.m[r] = beta1_k * s.m[r] + (1.0 - beta1_k) * g[r];
    s.v[r] = hp.beta2 * s.v[r] + (1.0 - hp.beta2) * g[r] * g[r];
    s.v_tilde[r] = hp.beta3 * s.v_tilde[r] +
                   (1.0 - hp.beta3) * std::max(s.v_tilde[r], s.v[r]);
    s.d[r] = s.m[r] / std::sqrt(s.v_tilde[r] + hp.epsilon_floor);
  }
}

// out_i = sum_j cols_j * Wt(j, i).  For M = 1 this must stay an exact
// multiply by 1.0 (single-node runs reproduce adam3_step bit for bit).
void mix_columns(const std::vector<Vec>& cols, const Eigen::MatrixXd& Wt,
                 std::vector<Vec>& out) {
  const int M = static_cast<int>(cols.size());
  const std::size_t d = cols[0].size();
  for (int i = 0; i < M; ++i) {
    for (std::size_t r = 0; r < d; ++r) {
      double acc = 0.0;
      for (int j = 0; j < M; ++j) acc += cols[j][r] * Wt(j, i);
      out[i][r] = acc;
    }
  }
}

void check_swarm(const SwarmState& swarm, const Eigen::MatrixXd& Wt,
                 const SaddleProblem& problem) {
  if (swarm.nodes.empty()) throw std::invalid_argument("step: empty swarm");
  if (Wt.rows() != static_cast<long>(swarm.size()) || Wt.rows() != Wt.cols())
    throw std::invalid_argument("step: mixing power does not match swarm size");
  if (swarm.nodes[0].x.size() != problem.dim())
    throw std::invalid_argument("step: state dimension does not match problem");
}

// dispatch overhead only pays off once a node's minibatch is substantial
constexpr int kParallelBatchFloor = 128;

void for_each_node(int nodes, WorkerPool* pool, int batch,
                   const std::function<void(int)>& fn) {
  if (pool == nullptr || nodes <= 1 || batch < kParallelBatchFloor) {
    for (int i = 0; i < nodes; ++i) fn(i);
    return;
  }
  pool->parallel_for(nodes, fn);
}

}  // namespace

bool adam3_step(Adam3State& s, const SaddleProblem& problem,
                const HyperParams& hp, std::uint64_t master_seed) {
  if (s.x.size() != problem.dim())
    throw std::invalid_argument("adam3_step: state dimension mismatch");
  const long k = s.step + 1;
  const double b1k = beta1_at(hp, k);
  const std::size_t d = s.x.size();

  for (std::size_t r = 0; r < d; ++r) s.z[r] = s.x[r] - hp.eta * s.d[r];
  RngStream rng(master_seed, 0, static_cast<std::uint64_t>(k));
  const Vec g = minibatch_gradient(problem, s.z, batch_at(hp, k), rng);
  adam3_update_node(s, g, b1k, hp);
  for (std::size_t r = 0; r < d; ++r) s.x[r] = s.x[r] - hp.eta * s.d[r];
  s.step = k;
  return state_finite(s);
}

bool dadam3_step(SwarmState& swarm, const Eigen::MatrixXd& Wt,
                 const SaddleProblem& problem, const HyperParams& hp,
                 std::uint64_t master_seed, bool shared_streams, WorkerPool* pool) {
  check_swarm(swarm, Wt, problem);
  const long k = swarm.step() + 1;
  const double b1k = beta1_at(hp, k);
  const int M = static_cast<int>(swarm.size());
  const std::size_t d = swarm.nodes[0].x.size();

  std::vector<Vec> tmp(M, Vec(d)), mixed(M, Vec(d));
  for (int i = 0; i < M; ++i)
    for (std::size_t r = 0; r < d; ++r)
      tmp[i][r] = swarm.nodes[i].x[r] - hp.eta * swarm.nodes[i].d[r];
  mix_columns(tmp, Wt, mixed);
  for (int i = 0; i < M; ++i) swarm.nodes[i].z = mixed[i];

  for_each_node(M, pool, batch_at(hp, k), [&](int i) {
    Adam3State& s = swarm.nodes[i];
    RngStream rng(master_seed, shared_streams ? 0 : static_cast<std::uint64_t>(i),
                  static_cast<std::uint64_t>(k));
    const Vec g = minibatch_gradient(problem, s.z, batch_at(hp, k), rng);
    adam3_update_node(s, g, b1k, hp);
  });

  for (int i = 0; i < M; ++i)
    for (std::size_t r = 0; r < d; ++r)
      tmp[i][r] = swarm.nodes[i].x[r] - hp.eta * swarm.nodes[i].d[r];
  mix_columns(tmp, Wt, mixed);
  for (int i = 0; i < M; ++i) {
    swarm.nodes[i].x = mixed[i];
    swarm.nodes[i].step = k;
  }
  return swarm_finite(swarm);
}

bool dosg_step(SwarmState& swarm, const Eigen::MatrixXd& Wt,
               const SaddleProblem& problem, const HyperParams& hp,
               std::uint64_t master_seed, bool shared_streams, WorkerPool* pool) {
  check_swarm(swarm, Wt, problem);
  const long k = swarm.step() + 1;
  const int M = static_cast<int>(swarm.size());
  const std::size_t d = swarm.nodes[0].x.size();

  // d holds the previous raw minibatch gradient
  std::vector<Vec> tmp(M, Vec(d)), mixed(M, Vec(d));
  for (int i = 0; i < M; ++i)
    for (std::size_t r = 0; r < d; ++r)
      tmp[i][r] = swarm.nodes[i].x[r] - hp.eta * swarm.nodes[i].d[r];
  mix_columns(tmp, Wt, mixed);
  for (int i = 0; i < M; ++i) swarm.nodes[i].z = mixed[i];

  for_each_node(M, pool, batch_at(hp, k), [&](int i) {
    Adam3State& s = swarm.nodes[i];
    RngStream rng(master_seed, shared_streams ? 0 : static_cast<std::uint64_t>(i),
                  static_cast<std::uint64_t>(k));
    s.d = minibatch_gradient(problem, s.z, batch_at(hp, k), rng);
  });

  for (int i = 0; i < M; ++i)
    for (std::size_t r = 0; r < d; ++r)
      tmp[i][r] = swarm.nodes[i].x[r] - hp.eta * swarm.nodes[i].d[r];
  mix_columns(tmp, Wt, mixed);
  for (int i = 0; i < M; ++i) {
    swarm.nodes[i].x = mixed[i];
    swarm.nodes[i].step = k;
  }
  return swarm_finite(swarm);
}

bool dp_oadam_step(SwarmState& swarm, const Eigen::MatrixXd& Wt,
                   const SaddleProblem& problem, const HyperParams& hp,
                   std::uint64_t master_seed, bool shared_streams, WorkerPool* pool) {
  check_swarm(swarm, Wt, problem);
  const long k = swarm.step() + 1;
  const int M = static_cast<int>(swarm.size());
  const std::size_t d = swarm.nodes[0].x.size();
  const double b1 = hp.beta1_1;  // bias correction needs a constant decay

  std::vector<Vec> tmp(M, Vec(d)), mixed(M, Vec(d));
  for_each_node(M, pool, batch_at(hp, k), [&](int i) {
    Adam3State& s = swarm.nodes[i];
    RngStream rng(master_seed, shared_streams ? 0 : static_cast<std::uint64_t>(i),
                  static_cast<std::uint64_t>(k));
    const Vec g = minibatch_gradient(problem, s.x, batch_at(hp, k), rng);
    const double m_corr =
        b1 > 0.0 ? 1.0 - std::pow(b1, static_cast<double>(k)) : 1.0;
    const double v_corr = 1.0 - std::pow(hp.beta2, static_cast<double>(k));
    for (std::size_t r = 0; r < d; ++r) {
      s.m[r] = b1 * s.m[r] + (1.0 - b1) * g[r];
      s.v[r] = hp.beta2 * s.v[r] + (1.0 - hp.beta2) * g[r] * g[r];
      const double mhat = s.m[r] / m_corr;
      const double vhat = v_corr > 0.0 ? s.v[r] / v_corr : s.v[r];
      const double dir = mhat / std::sqrt(vhat + hp.epsilon_floor);
      tmp[i][r] = s.x[r] - 2.0 * hp.eta * dir + hp.eta * s.d[r];
      s.d[r] = dir;
    }
  });
  mix_columns(tmp, Wt, mixed);
  for (int i = 0; i < M; ++i) {
    swarm.nodes[i].x = mixed[i];
    swarm.nodes[i].z = mixed[i];
    swarm.nodes[i].step = k;
  }
  return swarm_finite(swarm);
}

Vec swarm_mean_z(const SwarmState& swarm) {
  if (swarm.nodes.empty()) throw std::invalid_argument("swarm_mean_z: empty swarm");
  const std::size_t d = swarm.nodes[0].z.size();
  Vec mean(d, 0.0);
  for (const auto& s : swarm.nodes)
    for (std::size_t r = 0; r < d; ++r) mean[r] += s.z[r];
  const double inv = 1.0 / static_cast<double>(swarm.size());
  for (double& v : mean) v *= inv;
  return mean;
}

double swarm_column_spread(const SwarmState& swarm) {
  const std::size_t d = swarm.nodes[0].z.size();
  double spread = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    double zlo = swarm.nodes[0].z[r], zhi = zlo;
    double xlo = swarm.nodes[0].x[r], xhi = xlo;
    for (const auto& s : swarm.nodes) {
      zlo = std::min(zlo, s.z[r]);
      zhi = std::max(zhi, s.z[r]);
      xlo = std::min(xlo, s.x[r]);
      xhi = std::max(xhi, s.x[r]);
    }
    spread = std::max(spread, std::max(zhi - zlo, xhi - xlo));
  }
  return spread;
}

bool swarm_finite(const SwarmState& swarm) {
  for (const auto& s : swarm.nodes)
    if (!state_finite(s)) return false;
  return true;
}

}  // namespace dminimax
