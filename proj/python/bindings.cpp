#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "harvestdde/analysis.hpp"
#include "harvestdde/errors.hpp"
#include "harvestdde/integrate.hpp"
#include "harvestdde/model.hpp"
#include "harvestdde/periodic.hpp"

namespace py = pybind11;
using namespace harvestdde;

PYBIND11_MODULE(_harvestdde, m) {
    m.doc() =
        "Delay differential equation toolkit for harvested population models: "
        "coefficient schedules, method-of-steps integration, persistence "
        "envelopes and periodic-orbit search";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
    py::register_exception<InvalidDelay>(m, "InvalidDelay", error.ptr());
    py::register_exception<InvalidState>(m, "InvalidState", error.ptr());
    py::register_exception<NoPositiveEquilibrium>(m, "NoPositiveEquilibrium",
                                                  error.ptr());
    py::register_exception<OutOfRange>(m, "OutOfRange", error.ptr());
    py::register_exception<PremiseViolation>(m, "PremiseViolation", error.ptr());
    py::register_exception<PositivityLoss>(m, "PositivityLoss", error.ptr());

    m.def("seasonal_harvest", &seasonal_harvest, py::arg("t"), py::arg("peak"),
          py::arg("H"), py::arg("t_start"),
          "Annual sine harvest pulse; 0 outside the open window");
    m.def("rotational_harvest", &rotational_harvest, py::arg("t"),
          py::arg("peak"), py::arg("H"), py::arg("t_start"), py::arg("cycle"),
          py::arg("open_offset"),
          "Seasonal pulse active only in years n with n mod cycle == open_offset");

    py::class_<CoefficientFunction>(m, "CoefficientFunction")
        .def_static("constant", &CoefficientFunction::constant, py::arg("value"))
        .def_static("cosine", &CoefficientFunction::cosine, py::arg("base"),
                    py::arg("amplitude"), py::arg("omega"), py::arg("phase"))
        .def_static("seasonal_pulse", &CoefficientFunction::seasonal_pulse,
                    py::arg("peak"), py::arg("H"), py::arg("t_start"))
        .def_static("rotational_pulse", &CoefficientFunction::rotational_pulse,
                    py::arg("peak"), py::arg("H"), py::arg("t_start"),
                    py::arg("cycle"), py::arg("open_offset"))
        .def_static(
            "tabulated",
            [](std::vector<std::pair<double, double>> knots, bool periodic,
               double period) {
                return CoefficientFunction::tabulated(
                    std::move(knots),
                    periodic ? TabulatedCoeff::Extension::Periodic
                             : TabulatedCoeff::Extension::Clamped,
                    period);
            },
            py::arg("knots"), py::arg("periodic") = false, py::arg("period") = 0.0)
        .def("__call__", &CoefficientFunction::operator(), py::arg("t"));

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("gamma", &ModelParams::gamma)
        .def_readwrite("r", &ModelParams::r)
        .def_readwrite("eta", &ModelParams::eta)
        .def_readwrite("lam", &ModelParams::lam)
        .def_readwrite("K", &ModelParams::K)
        .def_readwrite("theta", &ModelParams::theta)
        .def_readwrite("period", &ModelParams::period)
        .def("b", &ModelParams::b, py::arg("t"),
             "Effective per-capita loss rate eta(t) - lambda(t)");

    m.def("lag_time", &lag_time, py::arg("params"), py::arg("t"));
    m.def("rhs", &rhs, py::arg("params"), py::arg("t"), py::arg("N"),
          py::arg("N_lag"));
    m.def("equilibrium", &equilibrium, py::arg("params"), py::arg("t_frozen"));

    py::class_<History>(m, "History")
        .def(py::init<>())
        .def_readwrite("phi", &History::phi)
        .def_readwrite("N0", &History::N0)
        .def_readwrite("support_depth", &History::support_depth)
        .def("__call__", &History::operator(), py::arg("t"));

    py::class_<IntegrationConfig>(m, "IntegrationConfig")
        .def(py::init<>())
        .def_readwrite("h", &IntegrationConfig::h)
        .def_readwrite("t_end", &IntegrationConfig::t_end)
        .def_readwrite("positivity_floor", &IntegrationConfig::positivity_floor)
        .def_readwrite("max_lag_iterations",
                       &IntegrationConfig::max_lag_iterations)
        .def_readwrite("enforce_positivity",
                       &IntegrationConfig::enforce_positivity);

    py::class_<Trajectory>(m, "Trajectory")
        .def_property_readonly("t0", &Trajectory::t0)
        .def_property_readonly("t_end", &Trajectory::t_end)
        .def_property_readonly("step", &Trajectory::step)
        .def_property_readonly("node_count", &Trajectory::node_count)
        .def("node_time", &Trajectory::node_time, py::arg("i"))
        .def("node_value", &Trajectory::node_value, py::arg("i"))
        .def("values", &Trajectory::values)
        .def("derivatives", &Trajectory::derivatives)
        .def("evaluate", &Trajectory::evaluate, py::arg("t"))
        .def(
            "csv",
            [](const Trajectory& traj, int oversample) {
                std::ostringstream out;
                traj.write_csv(out, oversample);
                return out.str();
            },
            py::arg("oversample") = 1, "Render the trajectory as CSV text");

    m.def(
        "integrate",
        [](const ModelParams& params, const History& history,
           const IntegrationConfig& cfg) { return integrate(params, history, cfg); },
        py::arg("params"), py::arg("history"), py::arg("config"),
        "Method-of-steps RK4 integration of the model with dense output");

    py::class_<PremiseCheck>(m, "PremiseCheck")
        .def_readonly("passed", &PremiseCheck::pass)
        .def_readonly("worst_t", &PremiseCheck::worst_t)
        .def_readonly("worst_value", &PremiseCheck::worst_value);

    py::class_<PremiseReport>(m, "PremiseReport")
        .def_readonly("gamma_positive", &PremiseReport::gamma_positive)
        .def_readonly("r_positive", &PremiseReport::r_positive)
        .def_readonly("b_above_floor", &PremiseReport::b_above_floor)
        .def_readonly("K_above_floor", &PremiseReport::K_above_floor)
        .def_readonly("theta_nonnegative", &PremiseReport::theta_nonnegative)
        .def_readonly("r_above_b", &PremiseReport::r_above_b)
        .def_readonly("finite_values", &PremiseReport::finite_values)
        .def("all_pass", &PremiseReport::all_pass)
        .def("first_failure", &PremiseReport::first_failure);

    py::class_<BoundsReport>(m, "BoundsReport")
        .def_readonly("lower", &BoundsReport::lower)
        .def_readonly("upper", &BoundsReport::upper)
        .def_readonly("inner_inf", &BoundsReport::inner_inf)
        .def_readonly("inner_sup", &BoundsReport::inner_sup)
        .def_readonly("sup_int_b", &BoundsReport::sup_int_b)
        .def_readonly("sup_int_rb", &BoundsReport::sup_int_rb)
        .def_readonly("N0", &BoundsReport::N0)
        .def_readonly("premises", &BoundsReport::premises);

    py::class_<ContainmentVerdict>(m, "ContainmentVerdict")
        .def_readonly("passed", &ContainmentVerdict::pass)
        .def_readonly("tol", &ContainmentVerdict::tol)
        .def_readonly("violations", &ContainmentVerdict::violations);

    py::enum_<PeriodicityCondition>(m, "PeriodicityCondition")
        .value("B1_HOLDS", PeriodicityCondition::B1_HOLDS)
        .value("B2_HOLDS", PeriodicityCondition::B2_HOLDS)
        .value("BOTH", PeriodicityCondition::BOTH)
        .value("NEITHER", PeriodicityCondition::NEITHER);

    py::class_<PeriodicityReport>(m, "PeriodicityReport")
        .def_readonly("m", &PeriodicityReport::m)
        .def_readonly("M", &PeriodicityReport::M)
        .def_readonly("B", &PeriodicityReport::B)
        .def_readonly("condition", &PeriodicityReport::condition)
        .def_readonly("T", &PeriodicityReport::T);

    m.def("validate_premises", &validate_premises, py::arg("params"),
          py::arg("horizon"), py::arg("grid_n"), py::arg("floor_b") = 1e-9,
          py::arg("floor_K") = 1e-9);
    m.def("persistence_bounds", &persistence_bounds, py::arg("params"),
          py::arg("N0"), py::arg("horizon"), py::arg("grid_n"),
          py::arg("quad_n"));
    m.def("verify_bounds", &verify_bounds, py::arg("trajectory"),
          py::arg("report"), py::arg("tol") = 1e-6);
    m.def("theorem2_margins", &theorem2_margins, py::arg("params"),
          py::arg("grid_n"));

    py::class_<HistorySegment>(m, "HistorySegment")
        .def(py::init<>())
        .def_static("constant", &HistorySegment::constant, py::arg("value"),
                    py::arg("theta_max"), py::arg("n_samples") = 256)
        .def_readwrite("theta_max", &HistorySegment::theta_max)
        .def_readwrite("samples", &HistorySegment::samples)
        .def("terminal", &HistorySegment::terminal)
        .def("interpolate", &HistorySegment::interpolate, py::arg("t"));

    py::class_<PeriodicSolveResult>(m, "PeriodicSolveResult")
        .def_readonly("converged", &PeriodicSolveResult::converged)
        .def_readonly("iterations", &PeriodicSolveResult::iterations)
        .def_readonly("residual", &PeriodicSolveResult::residual)
        .def_readonly("periodicity_residual",
                      &PeriodicSolveResult::periodicity_residual)
        .def_readonly("final_segment", &PeriodicSolveResult::final_segment)
        .def_readonly("trajectory_one_period",
                      &PeriodicSolveResult::trajectory_one_period);

    m.def("max_delay", &max_delay, py::arg("params"), py::arg("grid_n") = 2048);
    m.def("period_map", &period_map, py::arg("params"), py::arg("segment"),
          py::arg("config"));
    m.def("find_periodic", &find_periodic, py::arg("params"), py::arg("seed"),
          py::arg("max_iter"), py::arg("tol"), py::arg("config"));
}
