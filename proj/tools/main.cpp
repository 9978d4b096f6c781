// harvest_dde: scenario-driven front end for the delayed harvested-population
// model. Subcommands: simulate, bounds, periodic, sweep. All outputs are
// deterministic flat files (CSV trajectories, JSON reports).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "harvestdde/analysis.hpp"
#include "harvestdde/errors.hpp"
#include "harvestdde/integrate.hpp"
#include "harvestdde/periodic.hpp"
#include "harvestdde/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace harvestdde;

namespace {

// exit-code contract: stable across releases
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPremise = 3;
constexpr int kExitIntegration = 4;
constexpr int kExitNotConverged = 5;

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("HARVEST_DDE_LOG");
        if (!env) return 0;
        const std::string value(env);
        if (value == "debug") return 2;
        if (value == "info") return 1;
        return 0;
    }();
    return level;
}

void log_info(const std::string& message) {
    if (log_level() >= 1) std::cerr << "[info] " << message << "\n";
}

void log_debug(const std::string& message) {
    if (log_level() >= 2) std::cerr << "[debug] " << message << "\n";
}

std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<int> grid_n;
    std::optional<int> quad_n;
    std::optional<double> tol;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Scenario JSON file")
        ->required();
    cmd->add_option("--out", opts.out_dir, "Output directory");
    cmd->add_option("--grid-n", opts.grid_n, "Override analysis.grid_n");
    cmd->add_option("--quad-n", opts.quad_n, "Override analysis.quad_n");
    cmd->add_option("--tol", opts.tol,
                    "Override analysis.tol (periodic: solver tolerance)");
}

Scenario load(const CommonOptions& opts, bool tol_is_periodic = false) {
    Scenario scenario = load_scenario(opts.config_path);
    if (opts.grid_n) scenario.analysis.grid_n = *opts.grid_n;
    if (opts.quad_n) scenario.analysis.quad_n = *opts.quad_n;
    if (opts.tol) {
        if (tol_is_periodic)
            scenario.periodic.tol = *opts.tol;
        else
            scenario.analysis.tol = *opts.tol;
    }
    return scenario;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file " + path.string());
    out << content;
}

int fail(int code, const std::string& kind, const std::string& message,
         json extra = json::object()) {
    json block{{"error",
                json{{"exit_code", code}, {"kind", kind}, {"message", message}}}};
    for (auto& [key, value] : extra.items()) block["error"][key] = value;
    std::cout << block.dump(2) << "\n";
    return code;
}

int premise_failure(const PremiseReport& premises) {
    const std::string name = premises.first_failure();
    const PremiseCheck* check = nullptr;
    if (name == "b(t) >= b > 0") check = &premises.b_above_floor;
    else if (name == "r(t) > 0") check = &premises.r_positive;
    else if (name == "K(t) >= k > 0") check = &premises.K_above_floor;
    else if (name == "theta(t) >= 0") check = &premises.theta_nonnegative;
    else if (name == "r(t) > b(t)") check = &premises.r_above_b;
    else if (name == "gamma > 0") check = &premises.gamma_positive;
    json extra{{"premise", name}, {"premises", to_json(premises)}};
    if (check) {
        extra["worst_t"] = check->worst_t;
        extra["worst_value"] = check->worst_value;
    }
    return fail(kExitPremise, "premise_violation",
                "model premise '" + name + "' fails on the sampling grid", extra);
}

void print_bounds_table(const BoundsReport& report) {
    std::cout << "persistence envelope\n"
              << "  lower      " << fmt(report.lower) << "\n"
              << "  upper      " << fmt(report.upper) << "\n"
              << "  inner inf  " << fmt(report.inner_inf) << "\n"
              << "  inner sup  " << fmt(report.inner_sup) << "\n"
              << "  sup int b  " << fmt(report.sup_int_b) << "\n"
              << "  sup int r-b " << fmt(report.sup_int_rb) << "\n";
}

int run_simulate(const CommonOptions& opts) {
    const Scenario scenario = load(opts);
    const double horizon = scenario.analysis.effective_horizon(
        scenario.model, scenario.integration.t_end);

    const auto premises = validate_premises(scenario.model, horizon,
                                            scenario.analysis.grid_n);
    if (!premises.all_pass()) return premise_failure(premises);

    const auto bounds =
        persistence_bounds(scenario.model, scenario.initial.N0, horizon,
                           scenario.analysis.grid_n, scenario.analysis.quad_n);

    log_info("integrating to t_end = " + fmt(scenario.integration.t_end));
    Trajectory traj = [&] {
        try {
            return integrate(scenario.model, scenario.initial,
                             scenario.integration);
        } catch (const PositivityLoss& loss) {
            std::exit(fail(kExitIntegration, "positivity_loss", loss.what(),
                           json{{"t", loss.t()}, {"N", loss.value()}}));
        } catch (const InvalidDelay& e) {
            std::exit(fail(kExitIntegration, "invalid_delay", e.what()));
        } catch (const InvalidState& e) {
            std::exit(fail(kExitIntegration, "invalid_state", e.what()));
        }
    }();

    const auto verdict = verify_bounds(traj, bounds, scenario.analysis.tol);

    std::ostringstream csv;
    traj.write_csv(csv, scenario.outputs.oversample);
    const fs::path out_dir(opts.out_dir);
    write_file(out_dir / scenario.outputs.trajectory_csv, csv.str());

    json report{{"premises", to_json(premises)},
                {"bounds", to_json(bounds)},
                {"containment", to_json(verdict)},
                {"trajectory_csv", scenario.outputs.trajectory_csv}};
    write_file(out_dir / scenario.outputs.report_json, report.dump(2) + "\n");

    print_bounds_table(bounds);
    std::cout << "containment " << (verdict.pass ? "pass" : "FAIL") << " (tol "
              << fmt(verdict.tol) << ")\n"
              << "trajectory nodes " << traj.node_count() << "\n";
    return kExitOk;
}

int run_bounds(const CommonOptions& opts) {
    const Scenario scenario = load(opts);
    const double horizon = scenario.analysis.effective_horizon(
        scenario.model, scenario.integration.t_end);
    const auto premises = validate_premises(scenario.model, horizon,
                                            scenario.analysis.grid_n);
    if (!premises.all_pass()) return premise_failure(premises);

    const auto bounds =
        persistence_bounds(scenario.model, scenario.initial.N0, horizon,
                           scenario.analysis.grid_n, scenario.analysis.quad_n);
    write_file(fs::path(opts.out_dir) / scenario.outputs.report_json,
               to_json(bounds).dump(2) + "\n");
    print_bounds_table(bounds);
    return kExitOk;
}

int run_periodic(const CommonOptions& opts, bool force) {
    const Scenario scenario = load(opts, /*tol_is_periodic=*/true);
    if (!scenario.model.period)
        return fail(kExitConfig, "config_error",
                    "periodic analysis needs model.period");
    const double T = *scenario.model.period;

    const auto premises =
        validate_premises(scenario.model, T, scenario.analysis.grid_n);
    if (!premises.all_pass()) return premise_failure(premises);

    const auto margins =
        theorem2_margins(scenario.model, scenario.analysis.grid_n);
    std::cout << "margins m = " << fmt(margins.m) << ", M = " << fmt(margins.M)
              << ", B = " << fmt(margins.B) << ", condition "
              << to_string(margins.condition) << "\n";

    json report{{"margins", to_json(margins)}};
    const fs::path out_dir(opts.out_dir);

    if (margins.condition == PeriodicityCondition::NEITHER && !force) {
        report["solve"] = nullptr;
        report["note"] =
            "neither margin condition holds; periodic solve skipped "
            "(rerun with --force to attempt it)";
        write_file(out_dir / scenario.outputs.report_json, report.dump(2) + "\n");
        std::cout << "periodic solve skipped (condition NEITHER)\n";
        return kExitOk;
    }

    const double theta_max = max_delay(scenario.model);
    HistorySegment seed;
    seed.theta_max = theta_max;
    seed.samples.resize(static_cast<std::size_t>(
        std::max(scenario.periodic.n_samples, 2)));
    const auto n = seed.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double t = -theta_max + theta_max * static_cast<double>(i) /
                                          static_cast<double>(n - 1);
        seed.samples[i] = scenario.periodic.seed(t);
    }

    PeriodicSolveResult result;
    try {
        result = find_periodic(scenario.model, seed, scenario.periodic.max_iter,
                               scenario.periodic.tol, scenario.integration);
    } catch (const PositivityLoss& loss) {
        return fail(kExitIntegration, "positivity_loss", loss.what(),
                    json{{"t", loss.t()}, {"N", loss.value()}});
    } catch (const InvalidState& e) {
        return fail(kExitIntegration, "invalid_state", e.what());
    }

    report["solve"] = to_json(result);
    write_file(out_dir / scenario.outputs.report_json, report.dump(2) + "\n");
    if (result.trajectory_one_period) {
        std::ostringstream csv;
        result.trajectory_one_period->write_csv(csv, scenario.outputs.oversample);
        write_file(out_dir / scenario.outputs.trajectory_csv, csv.str());
    }

    std::cout << (result.converged ? "converged" : "NOT converged") << " after "
              << result.iterations << " iterations, residual "
              << fmt(result.residual) << ", periodicity residual "
              << fmt(result.periodicity_residual) << "\n";
    if (!result.converged)
        return fail(kExitNotConverged, "not_converged",
                    "picard iteration did not reach tolerance",
                    json{{"iterations", result.iterations},
                         {"residual", result.residual}});
    return kExitOk;
}

// ---- sweep ----

json* navigate(json& doc, const std::string& path) {
    json* node = &doc;
    std::size_t start = 0;
    while (start < path.size()) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(
            start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!node->is_object() || !node->contains(key)) return nullptr;
        node = &node->at(key);
        start = dot == std::string::npos ? path.size() : dot + 1;
    }
    return node;
}

struct SweepRow {
    std::vector<json> cell_values;
    bool ok = false;
    double lower = std::numeric_limits<double>::quiet_NaN();
    double upper = std::numeric_limits<double>::quiet_NaN();
    double m = std::numeric_limits<double>::quiet_NaN();
    double M = std::numeric_limits<double>::quiet_NaN();
    double B = std::numeric_limits<double>::quiet_NaN();
    std::string condition = "NA";
};

SweepRow evaluate_cell(const json& patched) {
    SweepRow row;
    try {
        const Scenario s = scenario_from_json(patched);
        const double horizon =
            s.analysis.effective_horizon(s.model, s.integration.t_end);
        const auto premises =
            validate_premises(s.model, horizon, s.analysis.grid_n);
        if (!premises.all_pass()) return row;
        const auto bounds = persistence_bounds(
            s.model, s.initial.N0, horizon, s.analysis.grid_n, s.analysis.quad_n);
        row.lower = bounds.lower;
        row.upper = bounds.upper;
        if (s.model.period) {
            const auto margins = theorem2_margins(s.model, s.analysis.grid_n);
            row.m = margins.m;
            row.M = margins.M;
            row.B = margins.B;
            row.condition = to_string(margins.condition);
        }
        row.ok = true;
    } catch (const Error&) {
        row.ok = false;
    }
    return row;
}

int run_sweep(const CommonOptions& opts, int jobs) {
    const Scenario scenario = load(opts);
    if (!scenario.sweep || scenario.sweep->axes.empty())
        return fail(kExitConfig, "config_error", "scenario has no sweep section");
    const auto& axes = scenario.sweep->axes;

    // validate axis paths against the raw document
    for (const auto& axis : axes) {
        json probe = scenario.raw;
        json* node = navigate(probe, axis.path);
        if (!node)
            return fail(kExitConfig, "config_error",
                        "sweep axis path '" + axis.path +
                            "' does not exist in the config");
        if (!node->is_number())
            return fail(kExitConfig, "config_error",
                        "sweep axis path '" + axis.path +
                            "' must reference a scalar field");
    }

    std::size_t cell_count = 1;
    for (const auto& axis : axes) cell_count *= axis.values.size();
    log_info("sweep over " + std::to_string(cell_count) + " cells");

    std::vector<SweepRow> rows(cell_count);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t cell = next.fetch_add(1);
            if (cell >= cell_count) return;
            json patched = scenario.raw;
            std::vector<json> cell_values(axes.size());
            std::size_t rest = cell;
            for (std::size_t a = 0; a < axes.size(); ++a) {
                const auto idx = rest % axes[a].values.size();
                rest /= axes[a].values.size();
                cell_values[a] = axes[a].values[idx];
                *navigate(patched, axes[a].path) = axes[a].values[idx];
            }
            rows[cell] = evaluate_cell(patched);
            rows[cell].cell_values = std::move(cell_values);
            log_debug("cell " + std::to_string(cell) + " done");
        }
    };

    if (jobs < 1)
        jobs = static_cast<int>(
            std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (int i = 1; i < jobs; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv << "cell";
    for (const auto& axis : axes) csv << "," << axis.path;
    csv << ",premises_ok,lower,upper,m,M,B,condition\n";
    for (std::size_t cell = 0; cell < cell_count; ++cell) {
        const SweepRow& row = rows[cell];
        csv << cell;
        for (const auto& value : row.cell_values) csv << "," << value.dump();
        csv << "," << (row.ok ? 1 : 0) << "," << fmt(row.lower) << ","
            << fmt(row.upper) << "," << fmt(row.m) << "," << fmt(row.M) << ","
            << fmt(row.B) << "," << row.condition << "\n";
    }
    write_file(fs::path(opts.out_dir) / scenario.outputs.sweep_csv, csv.str());
    std::cout << "sweep rows " << cell_count << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Simulation and analysis toolkit for a delayed harvested-population "
        "model: trajectories, persistence envelopes, periodicity margins and "
        "periodic-orbit search"};
    app.require_subcommand(1);

    CommonOptions simulate_opts, bounds_opts, periodic_opts, sweep_opts;
    bool force_periodic = false;
    int sweep_jobs = 0;

    auto* simulate = app.add_subcommand(
        "simulate", "Integrate a scenario and verify its persistence envelope");
    add_common(simulate, simulate_opts);
    auto* bounds = app.add_subcommand(
        "bounds", "Compute the persistence envelope for a scenario");
    add_common(bounds, bounds_opts);
    auto* periodic = app.add_subcommand(
        "periodic", "Check periodicity margins and search for a periodic orbit");
    add_common(periodic, periodic_opts);
    periodic->add_flag("--force", force_periodic,
                       "Attempt the solve even when neither margin condition holds");
    auto* sweep = app.add_subcommand(
        "sweep", "Tabulate envelope and margins over a parameter grid");
    add_common(sweep, sweep_opts);
    sweep->add_option("--jobs", sweep_jobs, "Worker threads (default: hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (simulate->parsed()) return run_simulate(simulate_opts);
        if (bounds->parsed()) return run_bounds(bounds_opts);
        if (periodic->parsed()) return run_periodic(periodic_opts, force_periodic);
        if (sweep->parsed()) return run_sweep(sweep_opts, sweep_jobs);
    } catch (const ConfigError& e) {
        return fail(kExitConfig, "config_error", e.what());
    } catch (const PremiseViolation& e) {
        return fail(kExitPremise, "premise_violation", e.what());
    } catch (const PositivityLoss& e) {
        return fail(kExitIntegration, "positivity_loss", e.what(),
                    json{{"t", e.t()}, {"N", e.value()}});
    } catch (const Error& e) {
        return fail(kExitIntegration, "error", e.what());
    }
    return kExitOk;
}
