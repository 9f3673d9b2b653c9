#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dminimax/analysis.hpp"
#include "dminimax/config.hpp"
#include "dminimax/problems.hpp"
#include "dminimax/sim.hpp"

namespace py = pybind11;
using namespace dminimax;

PYBIND11_MODULE(_core, m) {
  m.doc() = "decentralized adaptive min-max optimization toolkit";
  m.attr("__version__") = "0.1.0";

  py::register_exception<hypothesis_error>(m, "HypothesisError");
  py::register_exception<config_error>(m, "ConfigError");

  py::class_<JointPoint>(m, "JointPoint")
      .def_readonly("data", &JointPoint::data)
      .def_readonly("p1", &JointPoint::p1)
      .def_property_readonly("theta", &JointPoint::theta)
      .def_property_readonly("alpha", &JointPoint::alpha)
      .def("__len__", &JointPoint::dim);
  m.def("join", &join, py::arg("theta"), py::arg("alpha"));
  m.def("split", &split, py::arg("y"));

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t, std::uint64_t, std::uint64_t>(),
           py::arg("master_seed"), py::arg("node_id"), py::arg("iteration"))
      .def("uniform", &RngStream::uniform)
      .def("gaussian", &RngStream::gaussian);

  py::class_<OracleConstants>(m, "OracleConstants")
      .def_readonly("lipschitz", &OracleConstants::lipschitz)
      .def_readonly("grad_inf_bound", &OracleConstants::grad_inf_bound)
      .def_readonly("noise_sigma", &OracleConstants::noise_sigma)
      .def_readonly("domain_diameter", &OracleConstants::domain_diameter);

  py::class_<SaddleProblem, std::shared_ptr<SaddleProblem>>(m, "SaddleProblem")
      .def("expected_field",
           [](const SaddleProblem& p, const Vec& y) { return p.expected_field(y); })
      .def("sample_field", [](const SaddleProblem& p, const Vec& y,
                              RngStream& rng) { return p.sample_field(y, rng); })
      .def("constants", &SaddleProblem::constants)
      .def("fne", &SaddleProblem::known_fne)
      .def("objective",
           [](const SaddleProblem& p, const Vec& y) { return p.objective(y); })
      .def_property_readonly("dim", &SaddleProblem::dim);

  py::class_<StochasticScaledGame, SaddleProblem,
             std::shared_ptr<StochasticScaledGame>>(m, "StochasticScaledGame")
      .def(py::init<double, double, double>(), py::arg("c"),
           py::arg("kappa_coupling"), py::arg("box_scale") = 10.0);

  py::class_<BilinearGame, SaddleProblem, std::shared_ptr<BilinearGame>>(
      m, "BilinearGame")
      .def(py::init<Eigen::MatrixXd, double, double>(), py::arg("coupling"),
           py::arg("noise_sigma") = 0.0, py::arg("domain_radius") = 10.0);

  py::class_<QuadraticSaddle, SaddleProblem, std::shared_ptr<QuadraticSaddle>>(
      m, "QuadraticSaddle")
      .def(py::init<Eigen::MatrixXd, Eigen::MatrixXd, Eigen::MatrixXd,
                    Eigen::VectorXd, Eigen::VectorXd, double, double>(),
           py::arg("P"), py::arg("Q"), py::arg("C"), py::arg("b"), py::arg("e"),
           py::arg("noise_sigma") = 0.0, py::arg("domain_radius") = 10.0);

  m.def("minibatch_gradient",
        [](const SaddleProblem& p, const Vec& y, int batch, RngStream& rng) {
          return minibatch_gradient(p, y, batch, rng);
        },
        py::arg("problem"), py::arg("y"), py::arg("batch"), py::arg("rng"));

  py::class_<MintyReport>(m, "MintyReport")
      .def_readonly("min_inner_product", &MintyReport::min_inner_product)
      .def_readonly("argmin", &MintyReport::argmin);
  m.def("minty_check", &minty_check, py::arg("problem"), py::arg("z_star"),
        py::arg("trials"), py::arg("radius"), py::arg("rng"));

  py::class_<MixingMatrix>(m, "MixingMatrix")
      .def_readonly("W", &MixingMatrix::W)
      .def_readonly("rho", &MixingMatrix::rho)
      .def_readonly("nodes", &MixingMatrix::nodes);
  m.def("ring_mixing", &ring_mixing, py::arg("nodes"));
  m.def("centralized_mixing", &centralized_mixing, py::arg("nodes"));
  m.def("custom_mixing", &custom_mixing, py::arg("W"));
  m.def("contraction_profile", &contraction_profile, py::arg("mixing"),
        py::arg("k_max"));
  m.def("required_gossip_steps", &required_gossip_steps, py::arg("rho"),
        py::arg("C"));

  py::class_<HyperParams>(m, "HyperParams")
      .def(py::init<>())
      .def_readwrite("eta", &HyperParams::eta)
      .def_readwrite("beta1_1", &HyperParams::beta1_1)
      .def_readwrite("lambda_decay", &HyperParams::lambda_decay)
      .def_readwrite("beta2", &HyperParams::beta2)
      .def_readwrite("beta3", &HyperParams::beta3)
      .def_readwrite("batch", &HyperParams::batch)
      .def_readwrite("growing_batch", &HyperParams::growing_batch)
      .def_readwrite("gossip_steps", &HyperParams::gossip_steps)
      .def_readwrite("epsilon_floor", &HyperParams::epsilon_floor)
      .def_readwrite("v_tilde_init", &HyperParams::v_tilde_init);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("problem", &RunConfig::problem)
      .def_readwrite("mixing", &RunConfig::mixing)
      .def_property(
          "optimizer",
          [](const RunConfig& c) { return optimizer_name(c.optimizer); },
          [](RunConfig& c, const std::string& n) {
            c.optimizer = optimizer_from_name(n);
          })
      .def_readwrite("hp", &RunConfig::hp)
      .def_readwrite("iterations", &RunConfig::iterations)
      .def_readwrite("record_every", &RunConfig::record_every)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("shared_streams", &RunConfig::shared_streams)
      .def_readwrite("diverge_error", &RunConfig::diverge_error)
      .def_readwrite("early_stop_e", &RunConfig::early_stop_e)
      .def_readwrite("threads", &RunConfig::threads);

  py::class_<MetricsRecord>(m, "MetricsRecord")
      .def_readonly("k", &MetricsRecord::k)
      .def_readonly("e", &MetricsRecord::e)
      .def_readonly("grad_sq", &MetricsRecord::grad_sq)
      .def_readonly("R", &MetricsRecord::R)
      .def_readonly("consensus", &MetricsRecord::consensus)
      .def_readonly("box_violation", &MetricsRecord::box_violation)
      .def_readonly("diverged", &MetricsRecord::diverged);

  py::class_<MetricsSeries>(m, "MetricsSeries")
      .def_readonly("rows", &MetricsSeries::rows)
      .def_readonly("diverged", &MetricsSeries::diverged)
      .def_readonly("diverged_at", &MetricsSeries::diverged_at)
      .def_readonly("any_box_violation", &MetricsSeries::any_box_violation)
      .def_readonly("mean_grad_sq_all", &MetricsSeries::mean_grad_sq_all)
      .def_readonly("total_iterations", &MetricsSeries::total_iterations);

  m.def("run", &run, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("compare", &compare, py::arg("configs"), py::arg("shared_seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("metrics_to_csv", &metrics_to_csv, py::arg("series"));

  py::class_<ConstantInputs>(m, "ConstantInputs")
      .def(py::init<>())
      .def_readwrite("G0", &ConstantInputs::G0)
      .def_readwrite("G_inf", &ConstantInputs::G_inf)
      .def_readwrite("L", &ConstantInputs::L)
      .def_readwrite("sigma", &ConstantInputs::sigma)
      .def_readwrite("D", &ConstantInputs::D)
      .def_readwrite("rho", &ConstantInputs::rho)
      .def_readwrite("t", &ConstantInputs::t)
      .def_readwrite("eta", &ConstantInputs::eta)
      .def_readwrite("beta1_1", &ConstantInputs::beta1_1)
      .def_readwrite("lambda_decay", &ConstantInputs::lambda_decay)
      .def_readwrite("beta2", &ConstantInputs::beta2)
      .def_readwrite("beta3", &ConstantInputs::beta3)
      .def_readwrite("nodes", &ConstantInputs::nodes)
      .def_readwrite("dim", &ConstantInputs::dim);

  py::class_<TheoremConstants>(m, "TheoremConstants")
      .def_readonly("inputs", &TheoremConstants::in)
      .def_readonly("gamma", &TheoremConstants::gamma)
      .def_readonly("u_c", &TheoremConstants::u_c)
      .def_readonly("C0", &TheoremConstants::C0)
      .def_readonly("C1", &TheoremConstants::C1)
      .def_readonly("C2", &TheoremConstants::C2)
      .def_readonly("C3", &TheoremConstants::C3)
      .def_readonly("B1", &TheoremConstants::B1)
      .def_readonly("B2", &TheoremConstants::B2)
      .def_readonly("B3", &TheoremConstants::B3);
  m.def("compute_constants", &compute_constants, py::arg("inputs"));

  py::class_<BatchSchedule>(m, "BatchSchedule")
      .def(py::init<>())
      .def_readwrite("growing", &BatchSchedule::growing)
      .def_readwrite("constant", &BatchSchedule::constant);
  m.def("theorem_bound", &theorem_bound, py::arg("constants"), py::arg("N"),
        py::arg("schedule"));

  py::enum_<ComplexityRow>(m, "ComplexityRow")
      .value("fixed_batch", ComplexityRow::fixed_batch)
      .value("growing_batch", ComplexityRow::growing_batch)
      .value("many_nodes", ComplexityRow::many_nodes);
  py::class_<ComplexitySetting>(m, "ComplexitySetting")
      .def_readonly("batch", &ComplexitySetting::batch)
      .def_readonly("growing", &ComplexitySetting::growing)
      .def_readonly("nodes", &ComplexitySetting::nodes)
      .def_readonly("C", &ComplexitySetting::C)
      .def_readonly("t", &ComplexitySetting::t)
      .def_readonly("N", &ComplexitySetting::N);
  m.def("complexity_setting", &complexity_setting, py::arg("row"),
        py::arg("epsilon"), py::arg("rho"));

  py::class_<HadamardReport>(m, "HadamardReport")
      .def_readonly("trials", &HadamardReport::trials)
      .def_readonly("violations", &HadamardReport::violations)
      .def_readonly("worst_relative_slack", &HadamardReport::worst_relative_slack)
      .def_readonly("witness", &HadamardReport::witness);
  m.def("hadamard_property_suite", &hadamard_property_suite, py::arg("trials"),
        py::arg("rows"), py::arg("cols"), py::arg("rng"));

  py::class_<ResolvedConfig>(m, "ResolvedConfig")
      .def(py::init<>())
      .def_readwrite("problem_type", &ResolvedConfig::problem_type)
      .def_readwrite("c", &ResolvedConfig::c)
      .def_readwrite("coupling", &ResolvedConfig::coupling)
      .def_readwrite("box_scale", &ResolvedConfig::box_scale)
      .def_readwrite("topology_type", &ResolvedConfig::topology_type)
      .def_readwrite("nodes", &ResolvedConfig::nodes)
      .def_readwrite("gossip_steps", &ResolvedConfig::gossip_steps)
      .def_readwrite("optimizer", &ResolvedConfig::optimizer)
      .def_readwrite("eta", &ResolvedConfig::eta)
      .def_readwrite("beta1", &ResolvedConfig::beta1)
      .def_readwrite("lambda_decay", &ResolvedConfig::lambda)
      .def_readwrite("beta2", &ResolvedConfig::beta2)
      .def_readwrite("beta3", &ResolvedConfig::beta3)
      .def_readwrite("batch", &ResolvedConfig::batch)
      .def_readwrite("epsilon", &ResolvedConfig::epsilon)
      .def_readwrite("v_tilde_init", &ResolvedConfig::v_tilde_init)
      .def_readwrite("iterations", &ResolvedConfig::iterations)
      .def_readwrite("record_every", &ResolvedConfig::record_every)
      .def_readwrite("seed", &ResolvedConfig::seed);
  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("serialize_config", &serialize_config, py::arg("config"));
  m.def("build_run", &build_run, py::arg("config"));
  m.def("constant_inputs_from", &constant_inputs_from, py::arg("config"));
}
