#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "dminimax/config.hpp"
#include "dminimax/problems.hpp"
#include "dminimax/svg.hpp"

namespace fs = std::filesystem;
using namespace dminimax;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;

void write_atomic(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

fs::path default_out_dir() {
  if (const char* env = std::getenv("DMINIMAX_OUT")) return fs::path(env);
  return fs::path("out");
}

ResolvedConfig load_with_overrides(const std::string& path,
                                   const std::optional<std::uint64_t>& seed,
                                   const std::optional<long>& record_every) {
  ResolvedConfig cfg = load_config(path);
  if (seed) cfg.seed = *seed;
  if (record_every) cfg.record_every = *record_every;
  return cfg;
}

int cmd_run(const std::string& config_path, const fs::path& out_dir,
            const std::optional<std::uint64_t>& seed,
            const std::optional<long>& record_every, int threads) {
  ResolvedConfig cfg = load_with_overrides(config_path, seed, record_every);
  RunConfig rc = build_run(cfg);
  rc.threads = threads;
  const MetricsSeries series = run(rc);

  write_atomic(out_dir / "metrics.csv", metrics_to_csv(series));
  write_atomic(out_dir / "config.resolved", serialize_config(cfg));

  const MetricsRecord& last = series.rows.back();
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "optimizer: %s\niterations: %ld\nfinal_k: %ld\nfinal_e: %.17g\n"
                "final_R: %.17g\ndiverged: %s\ndiverged_at: %ld\n"
                "box_violation: %s\n",
                optimizer_name(rc.optimizer).c_str(), rc.iterations, last.k,
                last.e, last.R, series.diverged ? "true" : "false",
                series.diverged_at, series.any_box_violation ? "true" : "false");
  write_atomic(out_dir / "summary.txt", buf);

  std::cout << (series.diverged ? "diverged at k=" + std::to_string(series.diverged_at)
                                : "completed " + std::to_string(last.k) + " iterations")
            << ", final e = " << last.e << "\n";
  return series.diverged ? kExitDiverged : 0;
}

int cmd_compare(const std::vector<std::string>& config_paths,
                const fs::path& out_dir,
                const std::optional<std::uint64_t>& seed,
                const std::optional<long>& record_every, int threads) {
  std::vector<RunConfig> runs;
  std::vector<std::string> labels;
  std::uint64_t shared_seed = 0;
  bool have_seed = false;
  for (const auto& p : config_paths) {
    ResolvedConfig cfg = load_with_overrides(p, seed, record_every);
    if (!have_seed) { shared_seed = cfg.seed; have_seed = true; }
    RunConfig rc = build_run(cfg);
    rc.threads = threads;
    runs.push_back(std::move(rc));
    labels.push_back(fs::path(p).stem().string());
  }
  const std::vector<MetricsSeries> all = compare(runs, shared_seed);

  // one wide csv: the shared grid column, then per-run metric columns
  std::size_t max_rows = 0;
  for (const auto& s : all) max_rows = std::max(max_rows, s.rows.size());
  std::string csv = "k";
  for (const auto& label : labels)
    for (const char* metric : {"e", "grad_sq", "R", "consensus", "diverged"})
      csv += "," + label + "." + metric;
  csv += "\n";
  char buf[128];
  for (std::size_t row = 0; row < max_rows; ++row) {
    long k = -1;
    for (const auto& s : all)
      if (row < s.rows.size()) { k = s.rows[row].k; break; }
    csv += std::to_string(k);
    for (const auto& s : all) {
      if (row < s.rows.size()) {
        const auto& r = s.rows[row];
        std::snprintf(buf, sizeof(buf), ",%.17g,%.17g,%.17g,%.17g,%d", r.e,
                      r.grad_sq, r.R, r.consensus, r.diverged ? 1 : 0);
        csv += buf;
      } else {
        csv += ",,,,,";
      }
    }
    csv += "\n";
  }
  write_atomic(out_dir / "compare.csv", csv);

  struct MetricDef { const char* name; bool log_y; };
  for (const MetricDef metric : {MetricDef{"e", true}, MetricDef{"grad_sq", true},
                                 MetricDef{"R", true}, MetricDef{"consensus", true}}) {
    std::vector<SvgSeries> chart;
    for (std::size_t si = 0; si < all.size(); ++si) {
      SvgSeries s;
      s.label = labels[si];
      for (const auto& r : all[si].rows) {
        s.x.push_back(static_cast<double>(r.k));
        double v = r.e;
        if (std::string(metric.name) == "grad_sq") v = r.grad_sq;
        else if (std::string(metric.name) == "R") v = r.R;
        else if (std::string(metric.name) == "consensus") v = r.consensus;
        s.y.push_back(v);
      }
      chart.push_back(std::move(s));
    }
    write_atomic(out_dir / (std::string(metric.name) + ".svg"),
                 svg_line_chart(metric.name, chart, metric.log_y));
  }

  bool any_diverged = false;
  for (const auto& s : all) any_diverged |= s.diverged;
  std::cout << "compared " << all.size() << " runs; outputs in " << out_dir
            << "\n";
  return any_diverged ? kExitDiverged : 0;
}

int cmd_topology(const std::string& kind, int nodes) {
  MixingMatrix mixing;
  if (kind == "ring") mixing = ring_mixing(nodes);
  else if (kind == "central") mixing = centralized_mixing(nodes);
  else throw config_error("unknown topology: " + kind + " (want ring|central)");

  std::printf("nodes: %d\n", mixing.nodes);
  std::printf("W:\n");
  for (int i = 0; i < mixing.nodes; ++i) {
    for (int j = 0; j < mixing.nodes; ++j)
      std::printf("%s%.6f", j ? " " : "  ", mixing.W(i, j));
    std::printf("\n");
  }
  std::printf("rho: %.6f\n", mixing.rho);
  std::printf("contraction profile (max_i ||1/M - W^k e_i|| vs rho^k):\n");
  const auto profile = contraction_profile(mixing, 20);
  for (int k = 1; k <= 20; ++k)
    std::printf("  k=%2d  %.12e  <=  %.12e\n", k, profile[k - 1],
                std::pow(mixing.rho, k));
  return 0;
}

int cmd_constants(const std::string& config_path) {
  const ResolvedConfig cfg = load_config(config_path);
  const ConstantInputs in = constant_inputs_from(cfg);
  const TheoremConstants tc = compute_constants(in);

  std::printf("inputs:\n");
  std::printf("  G0=%.17g G_inf=%.17g L=%.17g sigma=%.17g D=%.17g\n", in.G0,
              in.G_inf, in.L, in.sigma, in.D);
  std::printf("  rho=%.17g t=%d M=%d d=%d\n", in.rho, in.t, in.nodes, in.dim);
  std::printf("  eta=%.17g beta1_1=%.17g lambda=%.17g beta2=%.17g beta3=%.17g\n",
              in.eta, in.beta1_1, in.lambda_decay, in.beta2, in.beta3);
  std::printf("derived:\n");
  std::printf("  gamma=%.17g u_c=%.17g\n", tc.gamma, tc.u_c);
  std::printf("  C0=%.17g\n  C1=%.17g\n  C2=%.17g\n  C3=%.17g\n", tc.C0, tc.C1,
              tc.C2, tc.C3);
  std::printf("  B1=%.17g\n  B2=%.17g\n  B3=%.17g\n", tc.B1, tc.B2, tc.B3);

  BatchSchedule schedule;
  schedule.growing = cfg.growing_batch;
  schedule.constant = cfg.batch;
  std::printf("rate bound at N=%ld: %.17g\n", cfg.iterations,
              theorem_bound(tc, cfg.iterations, schedule));

  if (in.rho > 0.0) {
    std::printf("gossip steps needed (t >= log_{1/rho}(1+C)):\n");
    for (double eps : {0.1, 0.01})
      std::printf("  eps=%g (C=eps^-2): t=%d\n", eps,
                  required_gossip_steps(in.rho, 1.0 / (eps * eps)));
  } else {
    std::printf("gossip steps needed: 1 (exact averaging, rho = 0)\n");
  }
  return 0;
}

int cmd_lemmas(std::uint64_t seed) {
  int failures = 0;

  RngStream rng(seed, 0, 0);
  for (const auto& [rows, cols] : {std::pair{8, 6}, {3, 9}, {5, 5}}) {
    const HadamardReport report = hadamard_property_suite(200, rows, cols, rng);
    std::printf("hadamard %dx%d: %d trials, %d violations, worst slack %.3e\n",
                rows, cols, report.trials, report.violations,
                report.worst_relative_slack);
    if (report.violations > 0) {
      std::printf("%s\n", report.witness.c_str());
      ++failures;
    }
  }

  for (int nodes : {3, 5, 8}) {
    const MixingMatrix mixing = ring_mixing(nodes);
    const auto profile = contraction_profile(mixing, 50);
    bool ok = true;
    for (int k = 1; k <= 50; ++k)
      if (profile[k - 1] > std::pow(mixing.rho, k) + 1e-12) ok = false;
    std::printf("contraction ring(%d): rho=%.6f %s\n", nodes, mixing.rho,
                ok ? "ok" : "VIOLATION");
    if (!ok) ++failures;
  }

  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decentralized adaptive min-max optimization toolkit"};
  app.require_subcommand(1);

  std::string config_path, topo_kind;
  std::vector<std::string> compare_paths;
  std::string out_str;
  int nodes = 5;
  int threads = 1;
  std::uint64_t seed_value = 0, lemma_seed = 1;
  bool seed_given = false;
  long record_value = 0;
  bool record_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_str, "output directory");
    sub->add_option("--seed", seed_value, "override the config seed")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--threads", threads, "worker threads (never changes results)");
    sub->add_option("--record-every", record_value, "override the record grid")
        ->each([&](const std::string&) { record_given = true; });
  };

  CLI::App* sub_run = app.add_subcommand("run", "run one experiment");
  sub_run->add_option("config", config_path, "run configuration file")->required();
  add_common(sub_run);

  CLI::App* sub_compare =
      app.add_subcommand("compare", "run several configs on a shared grid");
  sub_compare->add_option("configs", compare_paths, "configuration files")
      ->required()->expected(-1);
  add_common(sub_compare);

  CLI::App* sub_topology =
      app.add_subcommand("topology", "print a mixing matrix and its contraction");
  sub_topology->add_option("kind", topo_kind, "ring|central")->required();
  sub_topology->add_option("nodes", nodes, "node count")->required();

  CLI::App* sub_constants =
      app.add_subcommand("constants", "evaluate the rate-bound constants");
  sub_constants->add_option("config", config_path, "run configuration file")
      ->required();

  CLI::App* sub_lemmas =
      app.add_subcommand("lemmas", "run the inequality property suites");
  sub_lemmas->add_option("--seed", lemma_seed, "suite seed");

  CLI11_PARSE(app, argc, argv);

  const fs::path out_dir = out_str.empty() ? default_out_dir() : fs::path(out_str);
  const std::optional<std::uint64_t> seed_opt =
      seed_given ? std::optional<std::uint64_t>(seed_value) : std::nullopt;
  const std::optional<long> record_opt =
      record_given ? std::optional<long>(record_value) : std::nullopt;

  try {
    if (sub_run->parsed())
      return cmd_run(config_path, out_dir, seed_opt, record_opt, threads);
    if (sub_compare->parsed())
      return cmd_compare(compare_paths, out_dir, seed_opt, record_opt, threads);
    if (sub_topology->parsed()) return cmd_topology(topo_kind, nodes);
    if (sub_constants->parsed()) return cmd_constants(config_path);
    if (sub_lemmas->parsed()) return cmd_lemmas(lemma_seed);
  } catch (const hypothesis_error& err) {
    std::cerr << "hypothesis violation: " << err.what() << "\n";
    return kExitConfig;
  } catch (const config_error& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
