#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "harvestdde/analysis.hpp"
#include "harvestdde/integrate.hpp"
#include "harvestdde/model.hpp"
#include "harvestdde/periodic.hpp"

namespace harvestdde {

struct AnalysisConfig {
    int grid_n = 2048;
    int quad_n = 64;
    // Defaults to the declared period when present, else to t_end.
    std::optional<double> horizon;
    double tol = 1e-6;

    double effective_horizon(const ModelParams& model, double t_end) const;
};

struct PeriodicSolverConfig {
    CoefficientFunction seed = CoefficientFunction::constant(1.0);
    int n_samples = 256;
    int max_iter = 200;
    double tol = 1e-8;
};

struct OutputConfig {
    std::string trajectory_csv = "trajectory.csv";
    std::string report_json = "report.json";
    std::string sweep_csv = "sweep.csv";
    int oversample = 1;
};

struct SweepAxis {
    std::string path;  // dot-separated location of a scalar in the config
    std::vector<nlohmann::json> values;
};

struct SweepConfig {
    std::vector<SweepAxis> axes;
};

/// A full run description parsed from one JSON document. `raw` keeps the
/// original document so sweeps can patch scalar fields by path.
struct Scenario {
    ModelParams model;
    History initial;
    IntegrationConfig integration;
    AnalysisConfig analysis;
    PeriodicSolverConfig periodic;
    OutputConfig outputs;
    std::optional<SweepConfig> sweep;
    nlohmann::json raw;
};

CoefficientFunction coefficient_from_json(const nlohmann::json& j,
                                          const std::string& context);
nlohmann::json coefficient_to_json(const CoefficientFunction& c);

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::string& path);

nlohmann::json to_json(const PremiseCheck& check);
nlohmann::json to_json(const PremiseReport& report);
nlohmann::json to_json(const BoundsReport& report);
nlohmann::json to_json(const ContainmentVerdict& verdict);
nlohmann::json to_json(const PeriodicityReport& report);
nlohmann::json to_json(const PeriodicSolveResult& result);

}  // namespace harvestdde
