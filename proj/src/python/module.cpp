#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <random>
#include <sstream>
#include <utility>
#include <vector>

#include "d2d/assign.hpp"
#include "d2d/experiment.hpp"
#include "d2d/fading.hpp"
#include "d2d/matrix.hpp"
#include "d2d/model.hpp"
#include "d2d/oracle.hpp"
#include "d2d/orchestrate.hpp"
#include "d2d/power.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace d2d;

namespace {

// Explicit engine wrapper so python callers control sampling streams.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
};

Mat mat_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
  if (arr.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  Mat m(static_cast<int>(arr.shape(0)), static_cast<int>(arr.shape(1)));
  std::memcpy(m.a.data(), arr.data(), m.a.size() * sizeof(double));
  return m;
}

py::array mat_to_numpy(const Mat& m) {
  py::array_t<double> out({m.rows, m.cols});
  std::memcpy(out.mutable_data(), m.a.data(), m.a.size() * sizeof(double));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Channel assignment and power allocation for device-to-device "
            "underlay networks: fading models, per-channel power solvers, "
            "relaxed assignment ascent, end-to-end pipelines, reference "
            "oracles and the experiment driver.";
  m.attr("__version__") = "0.1.0";
  m.attr("UTILITY_FLOOR") = kUtilityFloor;

  // ---- matrix ----
  py::class_<Mat>(m, "Mat", py::buffer_protocol(),
                  "Dense row-major matrix of doubles.")
      .def(py::init<>())
      .def(py::init<int, int, double>(), "rows"_a, "cols"_a, "fill"_a = 0.0)
      .def_readonly("rows", &Mat::rows)
      .def_readonly("cols", &Mat::cols)
      .def_static("from_array", &mat_from_array, "array"_a,
                  "Build from any 2-D buffer convertible to float64.")
      .def("numpy", &mat_to_numpy, "Copy into a fresh numpy array.")
      .def("__getitem__",
           [](const Mat& s, std::pair<int, int> ij) {
             auto [i, j] = ij;
             if (i < 0 || i >= s.rows || j < 0 || j >= s.cols)
               throw py::index_error("Mat index out of range");
             return s(i, j);
           })
      .def("__setitem__",
           [](Mat& s, std::pair<int, int> ij, double v) {
             auto [i, j] = ij;
             if (i < 0 || i >= s.rows || j < 0 || j >= s.cols)
               throw py::index_error("Mat index out of range");
             s(i, j) = v;
           })
      .def("__repr__",
           [](const Mat& s) {
             std::ostringstream os;
             os << "Mat(" << s.rows << "x" << s.cols << ")";
             return os.str();
           })
      .def_buffer([](Mat& s) {
        return py::buffer_info(s.a.data(), sizeof(double),
                               py::format_descriptor<double>::format(), 2,
                               {s.rows, s.cols},
                               {static_cast<py::ssize_t>(sizeof(double)) * s.cols,
                                static_cast<py::ssize_t>(sizeof(double))});
      });
  m.def("max_abs_diff", [](const Mat& x, const Mat& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("shape mismatch");
    return max_abs_diff(x, y);
  }, "x"_a, "y"_a);

  // ---- fading ----
  py::enum_<FadingKind>(m, "FadingKind")
      .value("Exponential", FadingKind::Exponential)
      .value("Gaussian", FadingKind::Gaussian)
      .value("ChiSquared", FadingKind::ChiSquared)
      .value("LogNormal", FadingKind::LogNormal);

  py::class_<Rng>(m, "Rng", "Deterministic 64-bit sample stream.")
      .def(py::init<uint64_t>(), "seed"_a);

  py::class_<FadingModel>(m, "FadingModel",
                          "Nonnegative fading gain with a known distribution.")
      .def_static("exponential", &FadingModel::exponential, "mean"_a)
      .def_static("gaussian", &FadingModel::gaussian, "mean"_a, "variance"_a)
      .def_static("chi_squared", &FadingModel::chi_squared, "mean"_a, "variance"_a)
      .def_static("log_normal", &FadingModel::log_normal, "mean"_a, "variance"_a)
      .def_property_readonly("kind", &FadingModel::kind)
      .def_property_readonly("mean", &FadingModel::mean)
      .def_property_readonly("variance", &FadingModel::variance)
      .def("quantile", &FadingModel::quantile, "q"_a)
      .def("sample", [](const FadingModel& f, Rng& rng) { return f.sample(rng.eng); },
           "rng"_a);

  // ---- model ----
  py::enum_<Spectrum>(m, "Spectrum")
      .value("Uplink", Spectrum::Uplink)
      .value("Downlink", Spectrum::Downlink);
  py::enum_<CsiMode>(m, "CsiMode")
      .value("Pcsi", CsiMode::Pcsi)
      .value("Erm", CsiMode::Erm)
      .value("Mrm", CsiMode::Mrm);

  py::class_<NetworkParams>(m, "NetworkParams")
      .def(py::init<>())
      .def_readwrite("n_channels_ul", &NetworkParams::n_channels_ul)
      .def_readwrite("n_channels_dl", &NetworkParams::n_channels_dl)
      .def_readwrite("n_pairs", &NetworkParams::n_pairs)
      .def_readwrite("p_c_max_ul", &NetworkParams::p_c_max_ul)
      .def_readwrite("p_c_max_dl", &NetworkParams::p_c_max_dl)
      .def_readwrite("p_d_max", &NetworkParams::p_d_max)
      .def_readwrite("noise", &NetworkParams::noise)
      .def_readwrite("eta_c_min_ul", &NetworkParams::eta_c_min_ul)
      .def_readwrite("eta_c_min_dl", &NetworkParams::eta_c_min_dl)
      .def_readwrite("eta_d_min", &NetworkParams::eta_d_min)
      .def_readwrite("epsilon", &NetworkParams::epsilon)
      .def_readwrite("gamma", &NetworkParams::gamma)
      .def("validate", &NetworkParams::validate);

  py::class_<Geometry>(m, "Geometry")
      .def(py::init<>())
      .def_readwrite("cell_radius_m", &Geometry::cell_radius_m)
      .def_readwrite("d2d_radius_m", &Geometry::d2d_radius_m)
      .def_readwrite("pathloss_exponent", &Geometry::pathloss_exponent)
      .def_readwrite("ref_gain", &Geometry::ref_gain);

  py::class_<Vec2>(m, "Vec2")
      .def_readonly("x", &Vec2::x)
      .def_readonly("y", &Vec2::y);

  py::class_<NetworkInstance>(m, "NetworkInstance")
      .def_readonly("params", &NetworkInstance::params)
      .def_readonly("geometry", &NetworkInstance::geometry)
      .def_readonly("fading_kind", &NetworkInstance::fading_kind)
      .def_readonly("seed", &NetworkInstance::seed)
      .def_readonly("g_c_ul", &NetworkInstance::g_c_ul)
      .def_readonly("g_c_dl", &NetworkInstance::g_c_dl)
      .def_readonly("g_d", &NetworkInstance::g_d)
      .def_readonly("h_d_ul", &NetworkInstance::h_d_ul)
      .def_readonly("h_c_dl", &NetworkInstance::h_c_dl)
      .def_readonly("pos_cu_ul", &NetworkInstance::pos_cu_ul)
      .def_readonly("pos_cu_dl", &NetworkInstance::pos_cu_dl)
      .def_readonly("pos_d2d_tx", &NetworkInstance::pos_d2d_tx)
      .def_readonly("pos_d2d_rx", &NetworkInstance::pos_d2d_rx)
      .def("n_channels", &NetworkInstance::n_channels, "spectrum"_a)
      .def("p_c_max", &NetworkInstance::p_c_max, "spectrum"_a)
      .def("eta_c_min", &NetworkInstance::eta_c_min, "spectrum"_a)
      .def("cross_fading", &NetworkInstance::cross_fading, "spectrum"_a, "i"_a,
           "j"_a, py::return_value_policy::copy,
           "Fading model of the statistically known cross link (channel i, pair j).");

  m.def("generate_instance", &generate_instance, "seed"_a, "geometry"_a,
        "params"_a, "fading"_a,
        "Draw node positions and derive every link gain and fading model.");
  m.def("rate_shared", &rate_shared, "p_sig"_a, "g"_a, "p_int"_a, "h"_a,
        "noise"_a);
  m.def("rate_solo", &rate_solo, "p_c_max"_a, "g_c"_a, "noise"_a);
  m.def("rate_gain_v", &rate_gain_v, "i"_a, "j"_a, "p_c"_a, "p_d"_a, "inst"_a,
        "spectrum"_a, "h_eff"_a,
        "Sum-rate change of sharing channel i with pair j versus leaving it unshared.");
  m.def("total_rate", &total_rate, "b"_a, "v"_a, "solo_rates"_a);
  m.def("fairness_delta", &fairness_delta, "b"_a, "n_channels"_a, "n_pairs"_a);
  m.def("joint_fairness_delta", &joint_fairness_delta, "b_ul"_a, "b_dl"_a,
        "params"_a);
  m.def("solo_rates", &solo_rates, "inst"_a, "spectrum"_a);

  // ---- power ----
  py::class_<PowerSubproblem>(m, "PowerSubproblem",
                              "One shared channel in the canonical orientation.")
      .def(py::init<>())
      .def_readwrite("g_c", &PowerSubproblem::g_c)
      .def_readwrite("g_d", &PowerSubproblem::g_d)
      .def_readwrite("h_cu_to_d2d", &PowerSubproblem::h_cu_to_d2d)
      .def_readwrite("h_d2d_to_cu", &PowerSubproblem::h_d2d_to_cu)
      .def_readwrite("noise", &PowerSubproblem::noise)
      .def_readwrite("p_c_max", &PowerSubproblem::p_c_max)
      .def_readwrite("p_d_max", &PowerSubproblem::p_d_max)
      .def_readwrite("eta_c_min", &PowerSubproblem::eta_c_min)
      .def_readwrite("eta_d_min", &PowerSubproblem::eta_d_min);

  py::class_<PowerSolution>(m, "PowerSolution")
      .def_readonly("p_c", &PowerSolution::p_c)
      .def_readonly("p_d", &PowerSolution::p_d)
      .def_readonly("utility", &PowerSolution::utility)
      .def_readonly("feasible", &PowerSolution::feasible)
      .def_readonly("clamped", &PowerSolution::clamped)
      .def("__repr__", [](const PowerSolution& s) {
        std::ostringstream os;
        os << "PowerSolution(p_c=" << s.p_c << ", p_d=" << s.p_d
           << ", utility=" << s.utility << ", feasible=" << (s.feasible ? "True" : "False")
           << ")";
        return os.str();
      });

  m.def("solve_power_vertex", &solve_power_vertex, "sub"_a, "h_obj"_a, "h_con"_a,
        "Border-intersection search with explicit objective and constraint gains.");
  m.def("solve_power_pcsi", &solve_power_pcsi, "sub"_a,
        "Full-knowledge solve at the stored cross gain.");
  m.def("solve_power_erm", &solve_power_erm, "sub"_a, "fading"_a, "epsilon"_a,
        "Mean-value objective with the cellular floor held at quantile(1-epsilon).");
  m.def("mrm_objective_f0", &mrm_objective_f0, "p_c"_a, "p_d"_a, "sub"_a,
        "fading"_a, "epsilon"_a,
        "Rate guaranteed with probability 1-epsilon, excluding the unshared-rate constant.");
  m.def("solve_power_mrm",
        [](const PowerSubproblem& sub, const FadingModel& fading, double epsilon,
           double tol, int max_iters) {
          return solve_power_mrm(sub, fading, epsilon, tol, max_iters);
        },
        "sub"_a, "fading"_a, "epsilon"_a, "tol"_a = 1e-8, "max_iters"_a = 10000,
        "Guaranteed-rate solve by alternating closed-form updates.");
  m.def("solve_power_mrm_trace",
        [](const PowerSubproblem& sub, const FadingModel& fading, double epsilon,
           double tol, int max_iters) {
          std::vector<double> trace;
          PowerSolution sol = solve_power_mrm(sub, fading, epsilon, tol, max_iters, &trace);
          return py::make_tuple(sol, trace);
        },
        "sub"_a, "fading"_a, "epsilon"_a, "tol"_a = 1e-8, "max_iters"_a = 10000,
        "Same solve, also returning the per-sweep objective values.");

  // ---- assignment ----
  py::class_<PGDConfig>(m, "PGDConfig")
      .def(py::init<>())
      .def_readwrite("step_size", &PGDConfig::step_size)
      .def_readwrite("max_iters", &PGDConfig::max_iters)
      .def_readwrite("objective_tol", &PGDConfig::objective_tol);

  py::class_<PgdResult>(m, "PgdResult")
      .def_readonly("b", &PgdResult::b)
      .def_readonly("objective_trace", &PgdResult::objective_trace)
      .def_readonly("iterations", &PgdResult::iterations)
      .def_readonly("step_size", &PgdResult::step_size);

  py::class_<JointPgdResult>(m, "JointPgdResult")
      .def_readonly("b_ul", &JointPgdResult::b_ul)
      .def_readonly("b_dl", &JointPgdResult::b_dl)
      .def_readonly("objective_trace", &JointPgdResult::objective_trace)
      .def_readonly("iterations", &JointPgdResult::iterations)
      .def_readonly("step_size", &JointPgdResult::step_size);

  m.def("relaxed_objective_g", &relaxed_objective_g, "b"_a, "v"_a, "gamma"_a);
  m.def("grad_g", &grad_g, "b"_a, "v"_a, "gamma"_a);
  m.def("project_column",
        [](std::vector<double> x) {
          project_column(x);
          return x;
        },
        "x"_a, "Euclidean projection onto the nonnegative sub-simplex, returned as a copy.");
  m.def("pgd_assign",
        [](const Mat& v, double gamma, const PGDConfig& cfg) {
          return pgd_assign(v, gamma, cfg);
        },
        "v"_a, "gamma"_a, "cfg"_a = PGDConfig{},
        "Projected gradient ascent over the relaxed per-channel allocations.");
  m.def("pgd_assign_joint",
        [](const Mat& v_ul, const Mat& v_dl, double gamma, const NetworkParams& params,
           const PGDConfig& cfg) {
          return pgd_assign_joint(v_ul, v_dl, gamma, params, cfg);
        },
        "v_ul"_a, "v_dl"_a, "gamma"_a, "params"_a, "cfg"_a = PGDConfig{});
  m.def("assignment_objective", &assignment_objective, "b"_a, "v"_a, "gamma"_a);
  m.def("joint_assignment_objective", &joint_assignment_objective, "b_ul"_a,
        "b_dl"_a, "v_ul"_a, "v_dl"_a, "gamma"_a, "params"_a);
  m.def("discretize_max", &discretize_max, "b_relaxed"_a,
        "Per channel keep the largest relaxed mass; near-zero rows stay unassigned.");
  m.def("discretize_random", &discretize_random, "b_relaxed"_a, "n_samples"_a,
        "v"_a, "gamma"_a, "seed"_a,
        "Best of n randomized roundings plus the argmax rounding.");
  m.def("discretize_random_joint", &discretize_random_joint, "b_ul_relaxed"_a,
        "b_dl_relaxed"_a, "v_ul"_a, "v_dl"_a, "gamma"_a, "params"_a,
        "n_samples"_a, "seed"_a);
  m.def("exclusivity_projection", &exclusivity_projection, "b_ul"_a, "b_dl"_a,
        "v_ul"_a, "v_dl"_a, "gamma"_a, "params"_a,
        "Resolve pairs active in both spectra and re-offer the freed channels.");
  m.def("greedy_single_channel", &greedy_single_channel, "v"_a,
        "One-channel-per-pair reference matching.");

  // ---- orchestration ----
  py::class_<Partition>(m, "Partition")
      .def(py::init<>())
      .def(py::init([](std::vector<int> ul, std::vector<int> dl) {
             Partition p;
             p.ul_pairs = std::move(ul);
             p.dl_pairs = std::move(dl);
             return p;
           }),
           "ul_pairs"_a, "dl_pairs"_a)
      .def_readwrite("ul_pairs", &Partition::ul_pairs)
      .def_readwrite("dl_pairs", &Partition::dl_pairs)
      .def_static("all_ul", &Partition::all_ul, "n_pairs"_a)
      .def_static("all_dl", &Partition::all_dl, "n_pairs"_a)
      .def_static("half_half", &Partition::half_half, "n_pairs"_a)
      .def("validate", &Partition::validate, "n_pairs"_a);

  py::class_<MessageLog>(m, "MessageLog")
      .def_readonly("rounds", &MessageLog::rounds)
      .def_readonly("assignment_scalars", &MessageLog::assignment_scalars)
      .def_readonly("power_scalars", &MessageLog::power_scalars)
      .def("total", &MessageLog::total);

  py::class_<PipelineConfig>(m, "PipelineConfig")
      .def(py::init<>())
      .def_readwrite("mode", &PipelineConfig::mode)
      .def_readwrite("epsilon", &PipelineConfig::epsilon)
      .def_readwrite("gamma", &PipelineConfig::gamma)
      .def_readwrite("pgd", &PipelineConfig::pgd)
      .def_readwrite("random_discretize", &PipelineConfig::random_discretize)
      .def_readwrite("discretize_samples", &PipelineConfig::discretize_samples)
      .def_readwrite("seed", &PipelineConfig::seed)
      .def_readwrite("mrm_tol", &PipelineConfig::mrm_tol)
      .def_readwrite("mrm_max_iters", &PipelineConfig::mrm_max_iters)
      .def_readwrite("record_trace", &PipelineConfig::record_trace);

  py::class_<AllocationResult>(m, "AllocationResult")
      .def_readonly("b_ul", &AllocationResult::b_ul)
      .def_readonly("b_dl", &AllocationResult::b_dl)
      .def_readonly("v_ul", &AllocationResult::v_ul)
      .def_readonly("v_dl", &AllocationResult::v_dl)
      .def_readonly("p_c_ul", &AllocationResult::p_c_ul)
      .def_readonly("p_c_dl", &AllocationResult::p_c_dl)
      .def_readonly("p_d_ul", &AllocationResult::p_d_ul)
      .def_readonly("p_d_dl", &AllocationResult::p_d_dl)
      .def_readonly("total_rate", &AllocationResult::total_rate)
      .def_readonly("fairness_delta", &AllocationResult::fairness_delta)
      .def_readonly("fairness_joint", &AllocationResult::fairness_joint)
      .def_readonly("objective", &AllocationResult::objective)
      .def_readonly("iterations", &AllocationResult::iterations)
      .def_readonly("messages_exchanged", &AllocationResult::messages_exchanged)
      .def_readonly("trace_ul", &AllocationResult::trace_ul)
      .def_readonly("trace_dl", &AllocationResult::trace_dl);

  py::class_<PowerTables>(m, "PowerTables")
      .def_readonly("utility", &PowerTables::utility)
      .def_readonly("p_c", &PowerTables::p_c)
      .def_readonly("p_d", &PowerTables::p_d);

  m.def("build_power_tables",
        [](const NetworkInstance& inst, Spectrum spectrum, CsiMode mode, double epsilon,
           std::optional<std::vector<bool>> allowed, double mrm_tol, int mrm_max_iters) {
          std::vector<char> mask;
          if (allowed) {
            mask.assign(allowed->begin(), allowed->end());
          } else {
            mask.assign(static_cast<size_t>(inst.params.n_pairs), 1);
          }
          return build_power_tables(inst, spectrum, mode, epsilon, mask, mrm_tol,
                                    mrm_max_iters);
        },
        "inst"_a, "spectrum"_a, "mode"_a, "epsilon"_a, "allowed"_a = std::nullopt,
        "mrm_tol"_a = 1e-8, "mrm_max_iters"_a = 10000,
        "Mode-governed utility and power tables; pairs outside `allowed` get the sentinel.");

  m.def("run_centralized_separate", &run_centralized_separate, "inst"_a, "part"_a,
        "cfg"_a, py::call_guard<py::gil_scoped_release>());
  m.def("run_centralized_joint", &run_centralized_joint, "inst"_a, "cfg"_a,
        py::call_guard<py::gil_scoped_release>());
  m.def("run_decentralized_separate", &run_decentralized_separate, "inst"_a,
        "part"_a, "cfg"_a, py::call_guard<py::gil_scoped_release>(),
        "Returns (result, message_log).");
  m.def("run_decentralized_joint", &run_decentralized_joint, "inst"_a, "cfg"_a,
        py::call_guard<py::gil_scoped_release>(), "Returns (result, message_log).");
  m.def("run_single_channel_baseline", &run_single_channel_baseline, "inst"_a,
        "part"_a, "cfg"_a, py::call_guard<py::gil_scoped_release>());

  // ---- oracles ----
  auto ora = m.def_submodule("oracle", "Slow reference implementations and audits.");

  py::enum_<oracle::PowerObjective>(ora, "PowerObjective")
      .value("FullKnowledge", oracle::PowerObjective::FullKnowledge)
      .value("MeanValue", oracle::PowerObjective::MeanValue)
      .value("Guaranteed", oracle::PowerObjective::Guaranteed);

  py::class_<oracle::GridResult>(ora, "GridResult")
      .def_readonly("p_c", &oracle::GridResult::p_c)
      .def_readonly("p_d", &oracle::GridResult::p_d)
      .def_readonly("value", &oracle::GridResult::value)
      .def_readonly("feasible", &oracle::GridResult::feasible);

  ora.def("grid_search_power",
          [](const PowerSubproblem& sub, std::optional<FadingModel> fading,
             double epsilon, oracle::PowerObjective objective, int grid_n) {
            return oracle::grid_search_power(sub, fading ? &*fading : nullptr,
                                             epsilon, objective, grid_n);
          },
          "sub"_a, "fading"_a, "epsilon"_a, "objective"_a, "grid_n"_a,
          py::call_guard<py::gil_scoped_release>());

  py::class_<oracle::ExhaustiveResult>(ora, "ExhaustiveResult")
      .def_readonly("b", &oracle::ExhaustiveResult::b)
      .def_readonly("objective", &oracle::ExhaustiveResult::objective);
  ora.def("exhaustive_assignment", &oracle::exhaustive_assignment, "v"_a,
          "gamma"_a, py::call_guard<py::gil_scoped_release>());

  py::class_<oracle::ExhaustiveJointResult>(ora, "ExhaustiveJointResult")
      .def_readonly("b_ul", &oracle::ExhaustiveJointResult::b_ul)
      .def_readonly("b_dl", &oracle::ExhaustiveJointResult::b_dl)
      .def_readonly("objective", &oracle::ExhaustiveJointResult::objective);
  ora.def("exhaustive_assignment_joint", &oracle::exhaustive_assignment_joint,
          "v_ul"_a, "v_dl"_a, "gamma"_a, "params"_a,
          py::call_guard<py::gil_scoped_release>());

  py::class_<oracle::OutageEstimate>(ora, "OutageEstimate")
      .def_readonly("p_hat", &oracle::OutageEstimate::p_hat)
      .def_readonly("std_err", &oracle::OutageEstimate::std_err)
      .def_readonly("n", &oracle::OutageEstimate::n);
  ora.def("monte_carlo_outage", &oracle::monte_carlo_outage, "p_c"_a, "p_d"_a,
          "sub"_a, "fading"_a, "n"_a, "seed"_a,
          py::call_guard<py::gil_scoped_release>());

  py::class_<oracle::GainDeviation>(ora, "GainDeviation")
      .def_readonly("mc_mean", &oracle::GainDeviation::mc_mean)
      .def_readonly("substituted", &oracle::GainDeviation::substituted)
      .def_readonly("rel_dev", &oracle::GainDeviation::rel_dev)
      .def_readonly("std_err", &oracle::GainDeviation::std_err);
  ora.def("expected_gain_deviation", &oracle::expected_gain_deviation, "sub"_a,
          "p_c"_a, "p_d"_a, "fading"_a, "n"_a, "seed"_a,
          py::call_guard<py::gil_scoped_release>());

  py::class_<oracle::ConvergenceReport>(ora, "ConvergenceReport")
      .def_readonly("monotone", &oracle::ConvergenceReport::monotone)
      .def_readonly("finite_convergence", &oracle::ConvergenceReport::finite_convergence)
      .def_readonly("slope", &oracle::ConvergenceReport::slope)
      .def_readonly("n_points", &oracle::ConvergenceReport::n_points);
  ora.def("convergence_probe", &oracle::convergence_probe, "trace"_a, "mono_tol"_a);

  py::class_<oracle::AuditReport>(ora, "AuditReport")
      .def_readonly("ok", &oracle::AuditReport::ok)
      .def_readonly("violations", &oracle::AuditReport::violations);
  ora.def("audit_allocation", &oracle::audit_allocation, "inst"_a, "result"_a,
          "mode"_a, "epsilon"_a, "exclusivity_required"_a,
          py::call_guard<py::gil_scoped_release>(),
          "Independent feasibility and consistency check of a finished allocation.");

  // ---- experiment driver ----
  py::enum_<PipelineKind>(m, "PipelineKind")
      .value("CentralizedSeparate", PipelineKind::CentralizedSeparate)
      .value("CentralizedJoint", PipelineKind::CentralizedJoint)
      .value("DecentralizedSeparate", PipelineKind::DecentralizedSeparate)
      .value("DecentralizedJoint", PipelineKind::DecentralizedJoint)
      .value("Baseline", PipelineKind::Baseline);
  py::enum_<PartitionKind>(m, "PartitionKind")
      .value("AllUl", PartitionKind::AllUl)
      .value("AllDl", PartitionKind::AllDl)
      .value("HalfHalf", PartitionKind::HalfHalf);
  py::enum_<SweepParameter>(m, "SweepParameter")
      .value("NoSweep", SweepParameter::None)
      .value("Epsilon", SweepParameter::Epsilon)
      .value("Gamma", SweepParameter::Gamma);

  m.def("parse_fading", &parse_fading, "name"_a);
  m.def("parse_mode", &parse_mode, "name"_a);
  m.def("parse_pipeline", &parse_pipeline, "name"_a);
  m.def("parse_partition", &parse_partition, "name"_a);
  m.def("parse_sweep_parameter", &parse_sweep_parameter, "name"_a);
  m.def("make_partition", &make_partition, "kind"_a, "n_pairs"_a);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("geometry", &ExperimentConfig::geometry)
      .def_readwrite("params", &ExperimentConfig::params)
      .def_readwrite("fading", &ExperimentConfig::fading)
      .def_readwrite("mode", &ExperimentConfig::mode)
      .def_readwrite("pipeline", &ExperimentConfig::pipeline)
      .def_readwrite("partition", &ExperimentConfig::partition)
      .def_readwrite("epsilon", &ExperimentConfig::epsilon)
      .def_readwrite("gamma", &ExperimentConfig::gamma)
      .def_readwrite("realizations", &ExperimentConfig::realizations)
      .def_readwrite("base_seed", &ExperimentConfig::base_seed)
      .def_readwrite("outage_samples", &ExperimentConfig::outage_samples)
      .def_readwrite("random_discretize", &ExperimentConfig::random_discretize)
      .def_readwrite("discretize_samples", &ExperimentConfig::discretize_samples)
      .def_readwrite("sweep", &ExperimentConfig::sweep)
      .def_readwrite("sweep_values", &ExperimentConfig::sweep_values)
      .def("validate", &ExperimentConfig::validate);

  m.def("parse_config", &parse_config, "json_text"_a,
        "Strict JSON parsing; unknown keys and malformed values are rejected.");
  m.def("load_config", &load_config, "path"_a);

  py::class_<RealizationMetrics>(m, "RealizationMetrics")
      .def_readonly("rate", &RealizationMetrics::rate)
      .def_readonly("fairness", &RealizationMetrics::fairness)
      .def_readonly("outage", &RealizationMetrics::outage)
      .def_readonly("objective", &RealizationMetrics::objective)
      .def_readonly("iterations", &RealizationMetrics::iterations)
      .def_readonly("messages", &RealizationMetrics::messages);
  m.def("run_one", &run_one, "cfg"_a, "realization"_a,
        py::call_guard<py::gil_scoped_release>());
  m.def("run_realizations", &run_realizations, "cfg"_a,
        py::call_guard<py::gil_scoped_release>());

  py::class_<ExperimentRow>(m, "ExperimentRow")
      .def_readonly("sweep_value", &ExperimentRow::sweep_value)
      .def_readonly("rate_mean", &ExperimentRow::rate_mean)
      .def_readonly("rate_ci", &ExperimentRow::rate_ci)
      .def_readonly("fairness_mean", &ExperimentRow::fairness_mean)
      .def_readonly("fairness_ci", &ExperimentRow::fairness_ci)
      .def_readonly("outage_mean", &ExperimentRow::outage_mean)
      .def_readonly("outage_ci", &ExperimentRow::outage_ci)
      .def_readonly("iters_mean", &ExperimentRow::iters_mean)
      .def_readonly("msgs_mean", &ExperimentRow::msgs_mean);
  m.def("run_experiment", &run_experiment, "cfg"_a,
        py::call_guard<py::gil_scoped_release>(),
        "One row per sweep value (a single row when no sweep is configured).");
  m.def("to_csv", &to_csv, "rows"_a);
  m.def("write_csv", &write_csv, "rows"_a, "path"_a);
  m.def("allocation_outage", &allocation_outage, "inst"_a, "result"_a,
        "samples"_a, "seed"_a, py::call_guard<py::gil_scoped_release>());
}
