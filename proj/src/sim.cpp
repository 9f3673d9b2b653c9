#include "dminimax/sim.hpp"

#include <cmath>
#include <memory>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dminimax {

OptimizerKind optimizer_from_name(const std::string& name) {
  if (name == "adam3") return OptimizerKind::adam3;
  if (name == "dadam3") return OptimizerKind::dadam3;
  if (name == "dosg") return OptimizerKind::dosg;
  if (name == "dp_oadam") return OptimizerKind::dp_oadam;
  throw std::invalid_argument("unknown optimizer: " + name);
}

std::string optimizer_name(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::adam3: return "adam3";
    case OptimizerKind::dadam3: return "dadam3";
    case OptimizerKind::dosg: return "dosg";
    case OptimizerKind::dp_oadam: return "dp_oadam";
  }
  return "?";
}

namespace {

void validate(const RunConfig& config) {
  if (!config.problem) throw std::invalid_argument("run: no problem");
  if (config.iterations < 0) throw std::invalid_argument("run: negative iteration count");
  if (config.record_every < 1) throw std::invalid_argument("run: record_every must be >= 1");
  if (config.mixing.nodes < 1) throw std::invalid_argument("run: empty topology");
  if (config.optimizer == OptimizerKind::adam3 && config.mixing.nodes != 1)
    throw std::invalid_argument("run: adam3 is single-node; use dadam3 for M > 1");
  if (config.hp.eta <= 0.0) throw std::invalid_argument("run: eta must be > 0");
  if (config.hp.gossip_steps < 1)
    throw std::invalid_argument("run: gossip_steps must be >= 1");
  if (config.hp.epsilon_floor == 0.0 && config.hp.v_tilde_init == 0.0 &&
      (config.optimizer == OptimizerKind::adam3 ||
       config.optimizer == OptimizerKind::dadam3))
    throw std::invalid_argument(
        "run: epsilon and v_tilde_init cannot both be zero");
}

}  // namespace

JointPoint mean_iterate(const SwarmState& swarm, std::size_t p1) {
  JointPoint y;
  y.data = swarm_mean_z(swarm);
  y.p1 = p1;
  return y;
}

MetricsSeries run(const RunConfig& config) {
  validate(config);
  const SaddleProblem& problem = *config.problem;
  const std::size_t d = problem.dim();
  const int M = config.mixing.nodes;
  const Eigen::MatrixXd Wt = mixing_power(config.mixing, config.hp.gossip_steps);

  const auto fne = problem.known_fne();
  const double fne_norm = fne ? norm2(fne->data) : 0.0;
  const double domain_radius = problem.constants().domain_diameter / 2.0;
  const double blowup_norm = 1e6 * (1.0 + fne_norm);

  SwarmState swarm = make_swarm(M, d, config.hp.v_tilde_init);
  std::unique_ptr<WorkerPool> pool;
  if (config.threads > 1) pool = std::make_unique<WorkerPool>(config.threads);

  MetricsSeries series;
  double recorded_grad_sq_sum = 0.0;
  long recorded_count = 0;
  double all_grad_sq_sum = 0.0;

  auto make_record = [&](long k, bool diverged_now) {
    const Vec zbar = swarm_mean_z(swarm);
    MetricsRecord rec;
    rec.k = k;
    if (fne) {
      Vec diff(d);
      for (std::size_t r = 0; r < d; ++r) diff[r] = zbar[r] - fne->data[r];
      rec.e = fne_norm > 0.0 ? norm2(diff) / fne_norm : norm2(diff);
    } else {
      rec.e = std::numeric_limits<double>::quiet_NaN();
    }
    if (all_finite(zbar)) {
      const Vec g = problem.expected_field(zbar);
      rec.grad_sq = dot(g, g);
    } else {
      rec.grad_sq = std::numeric_limits<double>::quiet_NaN();
    }
    double cons = 0.0;
    bool box = false;
    for (const auto& node : swarm.nodes) {
      double dist = 0.0, znorm = 0.0;
      for (std::size_t r = 0; r < d; ++r) {
        const double dv = node.z[r] - zbar[r];
        dist += dv * dv;
        znorm += node.z[r] * node.z[r];
      }
      cons += dist;
      if (std::sqrt(znorm) > domain_radius) box = true;
    }
    rec.consensus = cons / static_cast<double>(M);
    rec.box_violation = box;
    rec.diverged = diverged_now;
    if (box) series.any_box_violation = true;
    recorded_grad_sq_sum += rec.grad_sq;
    recorded_count += 1;
    rec.R = recorded_grad_sq_sum / static_cast<double>(recorded_count);
    series.rows.push_back(rec);
    return rec;
  };

  make_record(0, false);

  for (long k = 1; k <= config.iterations; ++k) {
    bool finite_ok = true;
    switch (config.optimizer) {
      case OptimizerKind::adam3:
        finite_ok = adam3_step(swarm.nodes[0], problem, config.hp, config.seed);
        break;
      case OptimizerKind::dadam3:
        finite_ok = dadam3_step(swarm, Wt, problem, config.hp, config.seed,
                                config.shared_streams, pool.get());
        break;
      case OptimizerKind::dosg:
        finite_ok = dosg_step(swarm, Wt, problem, config.hp, config.seed,
                              config.shared_streams, pool.get());
        break;
      case OptimizerKind::dp_oadam:
        finite_ok = dp_oadam_step(swarm, Wt, problem, config.hp, config.seed,
                                  config.shared_streams, pool.get());
        break;
    }

    const Vec zbar = swarm_mean_z(swarm);
    double grad_sq = std::numeric_limits<double>::quiet_NaN();
    double e_now = std::numeric_limits<double>::quiet_NaN();
    if (all_finite(zbar)) {
      const Vec g = problem.expected_field(zbar);
      grad_sq = dot(g, g);
      if (fne) {
        Vec diff(d);
        for (std::size_t r = 0; r < d; ++r) diff[r] = zbar[r] - fne->data[r];
        e_now = fne_norm > 0.0 ? norm2(diff) / fne_norm : norm2(diff);
      }
    }
    all_grad_sq_sum += grad_sq;
    series.total_iterations = k;

    // the domain monitor covers every iterate, not just the record grid
    if (!series.any_box_violation) {
      for (const auto& node : swarm.nodes) {
        if (norm2(node.z) > domain_radius) {
          series.any_box_violation = true;
          break;
        }
      }
    }

    bool diverged = !finite_ok || !all_finite(zbar);
    if (!diverged && norm2(zbar) > blowup_norm) diverged = true;
    if (!diverged && fne && std::isfinite(e_now) && e_now > config.diverge_error)
      diverged = true;

    if (diverged) {
      series.diverged = true;
      series.diverged_at = k;
      make_record(k, true);
      break;
    }
    if (k % config.record_every == 0 || k == config.iterations) {
      make_record(k, false);
    }
    if (config.early_stop_e > 0.0 && fne && std::isfinite(e_now) &&
        e_now <= config.early_stop_e) {
      if (k % config.record_every != 0 && k != config.iterations)
        make_record(k, false);
      break;
    }
  }

  series.mean_grad_sq_all =
      series.total_iterations > 0
          ? all_grad_sq_sum / static_cast<double>(series.total_iterations)
          : series.rows.front().grad_sq;
  return series;
}

std::vector<MetricsSeries> compare(const std::vector<RunConfig>& configs,
                                   std::uint64_t shared_seed) {
  if (configs.empty()) throw std::invalid_argument("compare: no configs");
  for (const auto& c : configs) {
    if (c.iterations != configs[0].iterations ||
        c.record_every != configs[0].record_every)
      throw std::invalid_argument(
          "compare: configs must share the iteration count and record grid");
  }
  std::vector<MetricsSeries> out;
  out.reserve(configs.size());
  for (auto c : configs) {
    c.seed = shared_seed;
    out.push_back(run(c));
  }
  return out;
}

std::string metrics_to_csv(const MetricsSeries& series) {
  std::string out = "k,e,grad_sq,R,consensus,diverged\n";
  char buf[512];
  for (const auto& r : series.rows) {
    std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g,%.17g,%.17g,%d\n", r.k,
                  r.e, r.grad_sq, r.R, r.consensus, r.diverged ? 1 : 0);
    out += buf;
  }
  return out;
}

MetricsSeries metrics_from_csv(const std::string& text) {
  MetricsSeries series;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "k,e,grad_sq,R,consensus,diverged")
    throw std::invalid_argument("metrics_from_csv: bad header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    MetricsRecord r;
    int diverged = 0;
    if (std::sscanf(line.c_str(), "%ld,%lg,%lg,%lg,%lg,%d", &r.k, &r.e,
                    &r.grad_sq, &r.R, &r.consensus, &diverged) != 6)
      throw std::invalid_argument("metrics_from_csv: bad row: " + line);
    r.diverged = diverged != 0;
    if (r.diverged) {
      series.diverged = true;
      series.diverged_at = r.k;
    }
    series.rows.push_back(r);
  }
  return series;
}

}  // namespace dminimax
