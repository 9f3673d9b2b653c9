#include "dminimax/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "dminimax/problems.hpp"

namespace dminimax {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& section, const std::string& key,
                    const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || !std::isfinite(v))
    throw config_error("bad numeric value for " + section + "." + key + ": " + value);
  return v;
}

long parse_long(const std::string& section, const std::string& key,
                const std::string& value) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0')
    throw config_error("bad integer value for " + section + "." + key + ": " + value);
  return v;
}

std::uint64_t parse_u64(const std::string& section, const std::string& key,
                        const std::string& value) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || value.front() == '-')
    throw config_error("bad seed value for " + section + "." + key + ": " + value);
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& section, const std::string& key,
                const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw config_error("bad boolean value for " + section + "." + key + ": " + value);
}

const std::set<std::string> kScaledKeys = {"type", "c", "coupling", "box_scale"};
const std::set<std::string> kBilinearKeys = {"type", "coupling", "noise_sigma",
                                             "domain_radius", "p1", "p2"};
const std::set<std::string> kQuadraticKeys = {
    "type", "coupling", "noise_sigma", "domain_radius", "p1", "p2",
    "curvature_theta", "curvature_alpha", "linear_theta", "linear_alpha"};
const std::set<std::string> kTopologyKeys = {"type", "nodes", "gossip_steps"};
const std::set<std::string> kOptimizerKeys = {
    "name", "eta", "beta1", "lambda", "beta2", "beta3",
    "batch", "growing_batch", "epsilon", "v_tilde_init"};
const std::set<std::string> kRunKeys = {"iterations", "record_every", "seed",
                                        "shared_streams", "diverge_error",
                                        "early_stop_e"};

}  // namespace

ResolvedConfig parse_config(const std::string& text) {
  ResolvedConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  bool seed_seen = false;
  int lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("line " + std::to_string(lineno) + ": malformed section header");
      section = line.substr(1, line.size() - 2);
      if (section != "problem" && section != "topology" &&
          section != "optimizer" && section != "run")
        throw config_error("unknown section: [" + section + "]");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw config_error("line " + std::to_string(lineno) + ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw config_error("empty value for " + section + "." + key);

    if (section == "problem") {
      if (key == "type") {
        if (value != "scaled_game" && value != "bilinear" && value != "quadratic")
          throw config_error("unknown problem type: " + value);
        cfg.problem_type = value;
      } else if (key == "c") cfg.c = parse_double(section, key, value);
      else if (key == "coupling") cfg.coupling = parse_double(section, key, value);
      else if (key == "box_scale") cfg.box_scale = parse_double(section, key, value);
      else if (key == "noise_sigma") cfg.noise_sigma = parse_double(section, key, value);
      else if (key == "domain_radius") cfg.domain_radius = parse_double(section, key, value);
      else if (key == "p1") cfg.p1 = parse_long(section, key, value);
      else if (key == "p2") cfg.p2 = parse_long(section, key, value);
      else if (key == "curvature_theta") cfg.curvature_theta = parse_double(section, key, value);
      else if (key == "curvature_alpha") cfg.curvature_alpha = parse_double(section, key, value);
      else if (key == "linear_theta") cfg.linear_theta = parse_double(section, key, value);
      else if (key == "linear_alpha") cfg.linear_alpha = parse_double(section, key, value);
      else throw config_error("unknown key: problem." + key);
    } else if (section == "topology") {
      if (key == "type") {
        if (value != "ring" && value != "central")
          throw config_error("unknown topology type: " + value);
        cfg.topology_type = value;
      } else if (key == "nodes") cfg.nodes = static_cast<int>(parse_long(section, key, value));
      else if (key == "gossip_steps") cfg.gossip_steps = static_cast<int>(parse_long(section, key, value));
      else throw config_error("unknown key: topology." + key);
    } else if (section == "optimizer") {
      if (key == "name") cfg.optimizer = value;
      else if (key == "eta") cfg.eta = parse_double(section, key, value);
      else if (key == "beta1") cfg.beta1 = parse_double(section, key, value);
      else if (key == "lambda") cfg.lambda = parse_double(section, key, value);
      else if (key == "beta2") cfg.beta2 = parse_double(section, key, value);
      else if (key == "beta3") cfg.beta3 = parse_double(section, key, value);
      else if (key == "batch") cfg.batch = static_cast<int>(parse_long(section, key, value));
      else if (key == "growing_batch") cfg.growing_batch = parse_bool(section, key, value);
      else if (key == "epsilon") cfg.epsilon = parse_double(section, key, value);
      else if (key == "v_tilde_init") cfg.v_tilde_init = parse_double(section, key, value);
      else throw config_error("unknown key: optimizer." + key);
    } else {  // run
      if (key == "iterations") cfg.iterations = parse_long(section, key, value);
      else if (key == "record_every") cfg.record_every = parse_long(section, key, value);
      else if (key == "seed") {
        cfg.seed = parse_u64(section, key, value);
        seed_seen = true;
      } else if (key == "shared_streams") cfg.shared_streams = parse_bool(section, key, value);
      else if (key == "diverge_error") cfg.diverge_error = parse_double(section, key, value);
      else if (key == "early_stop_e") cfg.early_stop_e = parse_double(section, key, value);
      else throw config_error("unknown key: run." + key);
    }
  }

  if (!seed_seen) throw config_error("missing required key: run.seed");

  // keys that only make sense for another problem type are rejected too;
  // re-scan is cheap and gives a named error
  // (parse order above already accepted them, so validate from the raw text)
  const std::set<std::string>* allowed = &kScaledKeys;
  if (cfg.problem_type == "bilinear") allowed = &kBilinearKeys;
  if (cfg.problem_type == "quadratic") allowed = &kQuadraticKeys;
  std::istringstream again(text);
  section.clear();
  while (std::getline(again, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') { section = line.substr(1, line.size() - 2); continue; }
    const std::string key = trim(line.substr(0, line.find('=')));
    if (section == "problem" && !allowed->count(key))
      throw config_error("key problem." + key + " does not apply to type " +
                         cfg.problem_type);
  }

  optimizer_from_name(cfg.optimizer);  // validates the name
  return cfg;
}

ResolvedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize_config(const ResolvedConfig& cfg) {
  std::ostringstream os;
  os << "[problem]\n";
  os << "type = " << cfg.problem_type << "\n";
  if (cfg.problem_type == "scaled_game") {
    os << "c = " << fmt(cfg.c) << "\n";
    os << "coupling = " << fmt(cfg.coupling) << "\n";
    os << "box_scale = " << fmt(cfg.box_scale) << "\n";
  } else {
    os << "coupling = " << fmt(cfg.coupling) << "\n";
    os << "noise_sigma = " << fmt(cfg.noise_sigma) << "\n";
    os << "domain_radius = " << fmt(cfg.domain_radius) << "\n";
    os << "p1 = " << cfg.p1 << "\n";
    os << "p2 = " << cfg.p2 << "\n";
    if (cfg.problem_type == "quadratic") {
      os << "curvature_theta = " << fmt(cfg.curvature_theta) << "\n";
      os << "curvature_alpha = " << fmt(cfg.curvature_alpha) << "\n";
      os << "linear_theta = " << fmt(cfg.linear_theta) << "\n";
      os << "linear_alpha = " << fmt(cfg.linear_alpha) << "\n";
    }
  }
  os << "\n[topology]\n";
  os << "type = " << cfg.topology_type << "\n";
  os << "nodes = " << cfg.nodes << "\n";
  os << "gossip_steps = " << cfg.gossip_steps << "\n";
  os << "\n[optimizer]\n";
  os << "name = " << cfg.optimizer << "\n";
  os << "eta = " << fmt(cfg.eta) << "\n";
  os << "beta1 = " << fmt(cfg.beta1) << "\n";
  os << "lambda = " << fmt(cfg.lambda) << "\n";
  os << "beta2 = " << fmt(cfg.beta2) << "\n";
  os << "beta3 = " << fmt(cfg.beta3) << "\n";
  os << "batch = " << cfg.batch << "\n";
  os << "growing_batch = " << (cfg.growing_batch ? "true" : "false") << "\n";
  os << "epsilon = " << fmt(cfg.epsilon) << "\n";
  os << "v_tilde_init = " << fmt(cfg.v_tilde_init) << "\n";
  os << "\n[run]\n";
  os << "iterations = " << cfg.iterations << "\n";
  os << "record_every = " << cfg.record_every << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "shared_streams = " << (cfg.shared_streams ? "true" : "false") << "\n";
  os << "diverge_error = " << fmt(cfg.diverge_error) << "\n";
  os << "early_stop_e = " << fmt(cfg.early_stop_e) << "\n";
  return os.str();
}

namespace {

std::shared_ptr<const SaddleProblem> build_problem(const ResolvedConfig& cfg) {
  if (cfg.problem_type == "scaled_game")
    return std::make_shared<StochasticScaledGame>(cfg.c, cfg.coupling,
                                                  cfg.box_scale);
  if (cfg.p1 < 0 || cfg.p2 < 0 || cfg.p1 + cfg.p2 < 1)
    throw config_error("problem.p1/p2 must be nonnegative with p1 + p2 >= 1");
  if (cfg.problem_type == "bilinear") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(cfg.p1, cfg.p2);
    for (long i = 0; i < std::min(cfg.p1, cfg.p2); ++i) A(i, i) = cfg.coupling;
    return std::make_shared<BilinearGame>(A, cfg.noise_sigma, cfg.domain_radius);
  }
  Eigen::MatrixXd P =
      cfg.curvature_theta * Eigen::MatrixXd::Identity(cfg.p1, cfg.p1);
  Eigen::MatrixXd Q =
      cfg.curvature_alpha * Eigen::MatrixXd::Identity(cfg.p2, cfg.p2);
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(cfg.p1, cfg.p2);
  for (long i = 0; i < std::min(cfg.p1, cfg.p2); ++i) C(i, i) = cfg.coupling;
  Eigen::VectorXd b = Eigen::VectorXd::Constant(cfg.p1, cfg.linear_theta);
  Eigen::VectorXd e = Eigen::VectorXd::Constant(cfg.p2, cfg.linear_alpha);
  return std::make_shared<QuadraticSaddle>(P, Q, C, b, e, cfg.noise_sigma,
                                           cfg.domain_radius);
}

}  // namespace

RunConfig build_run(const ResolvedConfig& cfg) {
  RunConfig rc;
  rc.problem = build_problem(cfg);
  rc.mixing = cfg.topology_type == "ring" ? ring_mixing(cfg.nodes)
                                          : centralized_mixing(cfg.nodes);
  rc.optimizer = optimizer_from_name(cfg.optimizer);
  rc.hp.eta = cfg.eta;
  rc.hp.beta1_1 = cfg.beta1;
  rc.hp.lambda_decay = cfg.lambda;
  rc.hp.beta2 = cfg.beta2;
  rc.hp.beta3 = cfg.beta3;
  rc.hp.batch = cfg.batch;
  rc.hp.growing_batch = cfg.growing_batch;
  rc.hp.gossip_steps = cfg.gossip_steps;
  rc.hp.epsilon_floor = cfg.epsilon;
  rc.hp.v_tilde_init = cfg.v_tilde_init;
  rc.iterations = cfg.iterations;
  rc.record_every = cfg.record_every;
  rc.seed = cfg.seed;
  rc.shared_streams = cfg.shared_streams;
  rc.diverge_error = cfg.diverge_error;
  rc.early_stop_e = cfg.early_stop_e;
  return rc;
}

ConstantInputs constant_inputs_from(const ResolvedConfig& cfg) {
  const auto problem = build_problem(cfg);
  const auto consts = problem->constants();
  const MixingMatrix mixing = cfg.topology_type == "ring"
                                  ? ring_mixing(cfg.nodes)
                                  : centralized_mixing(cfg.nodes);
  ConstantInputs in;
  in.G0 = cfg.v_tilde_init > 0.0 ? std::sqrt(cfg.v_tilde_init) : 0.0;
  in.G_inf = consts.grad_inf_bound;
  in.L = consts.lipschitz;
  in.sigma = consts.noise_sigma;
  in.D = consts.domain_diameter;
  in.rho = mixing.rho;
  in.t = cfg.gossip_steps;
  in.eta = cfg.eta;
  in.beta1_1 = cfg.beta1;
  in.lambda_decay = cfg.lambda;
  in.beta2 = cfg.beta2;
  in.beta3 = cfg.beta3;
  in.nodes = cfg.nodes;
  in.dim = static_cast<int>(problem->dim());
  return in;
}

}  // namespace dminimax
