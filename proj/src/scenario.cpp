#include "harvestdde/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <utility>

#include "harvestdde/errors.hpp"

namespace harvestdde {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key)) {
        const std::string where = ctx.empty() ? key : ctx + "." + key;
        throw ConfigError("config: missing field '" + where + "'");
    }
    return j.at(key);
}

double as_number(const json& j, const std::string& ctx) {
    if (!j.is_number())
        throw ConfigError("config: field '" + ctx + "' must be a number");
    return j.get<double>();
}

double number_field(const json& j, const char* key, const std::string& ctx) {
    return as_number(require(j, key, ctx), ctx + "." + key);
}

double number_or(const json& j, const char* key, const std::string& ctx,
                 double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return as_number(j.at(key), ctx + "." + key);
}

int int_or(const json& j, const char* key, const std::string& ctx, int fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer())
        throw ConfigError("config: field '" + ctx + "." + key +
                          "' must be an integer");
    return v.get<int>();
}

int int_field(const json& j, const char* key, const std::string& ctx) {
    const json& v = require(j, key, ctx);
    if (!v.is_number_integer())
        throw ConfigError("config: field '" + ctx + "." + key +
                          "' must be an integer");
    return v.get<int>();
}

std::string string_or(const json& j, const char* key, const std::string& ctx,
                      const std::string& fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string())
        throw ConfigError("config: field '" + ctx + "." + key +
                          "' must be a string");
    return v.get<std::string>();
}

}  // namespace

CoefficientFunction coefficient_from_json(const json& j,
                                          const std::string& context) {
    if (j.is_number()) return CoefficientFunction::constant(j.get<double>());
    if (!j.is_object())
        throw ConfigError("config: '" + context +
                          "' must be a number or a tagged coefficient object");
    const std::string type = require(j, "type", context).get<std::string>();
    try {
        if (type == "constant")
            return CoefficientFunction::constant(number_field(j, "value", context));
        if (type == "cosine")
            return CoefficientFunction::cosine(
                number_field(j, "base", context),
                number_field(j, "amplitude", context),
                number_field(j, "omega", context),
                number_or(j, "phase", context, 0.0));
        if (type == "seasonal_pulse")
            return CoefficientFunction::seasonal_pulse(
                number_or(j, "peak", context, 0.5),
                number_field(j, "H", context),
                number_field(j, "t_start", context));
        if (type == "rotational_pulse")
            return CoefficientFunction::rotational_pulse(
                number_or(j, "peak", context, 0.5),
                number_field(j, "H", context),
                number_field(j, "t_start", context),
                int_field(j, "cycle", context),
                int_or(j, "open_offset", context, 0));
        if (type == "tabulated") {
            const json& knots_json = require(j, "knots", context);
            if (!knots_json.is_array())
                throw ConfigError("config: '" + context +
                                  ".knots' must be an array of [t, value] pairs");
            std::vector<std::pair<double, double>> knots;
            knots.reserve(knots_json.size());
            for (const auto& item : knots_json) {
                if (!item.is_array() || item.size() != 2)
                    throw ConfigError("config: '" + context +
                                      ".knots' entries must be [t, value] pairs");
                knots.emplace_back(as_number(item[0], context + ".knots"),
                                   as_number(item[1], context + ".knots"));
            }
            const std::string ext =
                string_or(j, "extension", context, "clamped");
            if (ext == "clamped")
                return CoefficientFunction::tabulated(
                    std::move(knots), TabulatedCoeff::Extension::Clamped);
            if (ext == "periodic")
                return CoefficientFunction::tabulated(
                    std::move(knots), TabulatedCoeff::Extension::Periodic,
                    number_field(j, "period", context));
            throw ConfigError("config: '" + context +
                              ".extension' must be 'clamped' or 'periodic'");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("config: '" + context + "': " + e.what());
    }
    throw ConfigError("config: '" + context + ".type' unknown coefficient type '" +
                      type + "'");
}

json coefficient_to_json(const CoefficientFunction& c) {
    return std::visit(
        [](const auto& form) -> json {
            using T = std::decay_t<decltype(form)>;
            if constexpr (std::is_same_v<T, ConstantCoeff>) {
                return json{{"type", "constant"}, {"value", form.value}};
            } else if constexpr (std::is_same_v<T, CosineCoeff>) {
                return json{{"type", "cosine"},
                            {"base", form.base},
                            {"amplitude", form.amplitude},
                            {"omega", form.omega},
                            {"phase", form.phase}};
            } else if constexpr (std::is_same_v<T, SeasonalPulseCoeff>) {
                return json{{"type", "seasonal_pulse"},
                            {"peak", form.peak},
                            {"H", form.H},
                            {"t_start", form.t_start}};
            } else if constexpr (std::is_same_v<T, RotationalPulseCoeff>) {
                return json{{"type", "rotational_pulse"},
                            {"peak", form.peak},
                            {"H", form.H},
                            {"t_start", form.t_start},
                            {"cycle", form.cycle},
                            {"open_offset", form.open_offset}};
            } else {
                json knots = json::array();
                for (const auto& [t, value] : form.knots)
                    knots.push_back(json::array({t, value}));
                json out{{"type", "tabulated"}, {"knots", std::move(knots)}};
                if (form.extension == TabulatedCoeff::Extension::Periodic) {
                    out["extension"] = "periodic";
                    out["period"] = form.period;
                } else {
                    out["extension"] = "clamped";
                }
                return out;
            }
        },
        c.form());
}

double AnalysisConfig::effective_horizon(const ModelParams& model,
                                         double t_end) const {
    if (horizon) return *horizon;
    if (model.period) return *model.period;
    return t_end;
}

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config: document must be an object");
    Scenario s;
    s.raw = j;

    const json& model = require(j, "model", "");
    s.model.gamma = number_field(model, "gamma", "model");
    s.model.r = coefficient_from_json(require(model, "r", "model"), "model.r");
    s.model.eta =
        coefficient_from_json(require(model, "eta", "model"), "model.eta");
    s.model.K = coefficient_from_json(require(model, "K", "model"), "model.K");
    if (model.contains("lambda"))
        s.model.lam = coefficient_from_json(model.at("lambda"), "model.lambda");
    if (model.contains("theta"))
        s.model.theta = coefficient_from_json(model.at("theta"), "model.theta");
    if (model.contains("period"))
        s.model.period = as_number(model.at("period"), "model.period");

    if (j.contains("integration")) {
        const json& integration = j.at("integration");
        s.integration.h = number_or(integration, "h", "integration", s.integration.h);
        s.integration.t_end =
            number_or(integration, "t_end", "integration", s.integration.t_end);
        s.integration.positivity_floor = number_or(
            integration, "positivity_floor", "integration", 0.0);
        s.integration.max_lag_iterations =
            int_or(integration, "max_lag_iterations", "integration", 3);
        if (integration.contains("enforce_positivity")) {
            const json& flag = integration.at("enforce_positivity");
            if (!flag.is_boolean())
                throw ConfigError(
                    "config: field 'integration.enforce_positivity' must be a boolean");
            s.integration.enforce_positivity = flag.get<bool>();
        }
        if (!(s.integration.h > 0.0))
            throw ConfigError("config: 'integration.h' must be > 0");
        if (!(s.integration.t_end > 0.0))
            throw ConfigError("config: 'integration.t_end' must be > 0");
    }

    if (j.contains("initial")) {
        const json& initial = j.at("initial");
        s.initial.N0 = number_field(initial, "N0", "initial");
        if (initial.contains("phi"))
            s.initial.phi = coefficient_from_json(initial.at("phi"), "initial.phi");
        else
            s.initial.phi = CoefficientFunction::constant(s.initial.N0);
    } else {
        throw ConfigError("config: missing field '.initial'");
    }
    // how far below 0 the lag reaches on the run horizon
    double theta_max = 0.0;
    for (int i = 0; i <= 2048; ++i) {
        const double t = s.integration.t_end * static_cast<double>(i) / 2048;
        theta_max = std::max(theta_max, s.model.theta(t));
    }
    s.initial.support_depth = theta_max;

    if (j.contains("analysis")) {
        const json& analysis = j.at("analysis");
        s.analysis.grid_n = int_or(analysis, "grid_n", "analysis", 2048);
        s.analysis.quad_n = int_or(analysis, "quad_n", "analysis", 64);
        if (analysis.contains("horizon"))
            s.analysis.horizon = as_number(analysis.at("horizon"), "analysis.horizon");
        s.analysis.tol = number_or(analysis, "tol", "analysis", 1e-6);
    }

    if (j.contains("periodic")) {
        const json& periodic = j.at("periodic");
        if (periodic.contains("seed"))
            s.periodic.seed =
                coefficient_from_json(periodic.at("seed"), "periodic.seed");
        s.periodic.n_samples = int_or(periodic, "n_samples", "periodic", 256);
        s.periodic.max_iter = int_or(periodic, "max_iter", "periodic", 200);
        s.periodic.tol = number_or(periodic, "tol", "periodic", 1e-8);
    }

    if (j.contains("outputs")) {
        const json& outputs = j.at("outputs");
        s.outputs.trajectory_csv = string_or(outputs, "trajectory_csv", "outputs",
                                             s.outputs.trajectory_csv);
        s.outputs.report_json =
            string_or(outputs, "report_json", "outputs", s.outputs.report_json);
        s.outputs.sweep_csv =
            string_or(outputs, "sweep_csv", "outputs", s.outputs.sweep_csv);
        s.outputs.oversample = int_or(outputs, "oversample", "outputs", 1);
    }

    if (j.contains("sweep")) {
        const json& sweep = j.at("sweep");
        SweepConfig sweep_cfg;
        const json& axes = require(sweep, "axes", "sweep");
        if (!axes.is_array() || axes.empty())
            throw ConfigError("config: 'sweep.axes' must be a non-empty array");
        for (std::size_t i = 0; i < axes.size(); ++i) {
            const std::string ctx = "sweep.axes[" + std::to_string(i) + "]";
            const json& axis = axes[i];
            SweepAxis parsed;
            parsed.path = require(axis, "path", ctx).get<std::string>();
            const json& values = require(axis, "values", ctx);
            if (!values.is_array() || values.empty())
                throw ConfigError("config: '" + ctx +
                                  ".values' must be a non-empty array");
            parsed.values.assign(values.begin(), values.end());
            sweep_cfg.axes.push_back(std::move(parsed));
        }
        s.sweep = std::move(sweep_cfg);
    }

    return s;
}

json scenario_to_json(const Scenario& s) {
    json model{{"gamma", s.model.gamma},
               {"r", coefficient_to_json(s.model.r)},
               {"eta", coefficient_to_json(s.model.eta)},
               {"lambda", coefficient_to_json(s.model.lam)},
               {"K", coefficient_to_json(s.model.K)},
               {"theta", coefficient_to_json(s.model.theta)}};
    if (s.model.period) model["period"] = *s.model.period;

    json out{
        {"model", std::move(model)},
        {"initial",
         json{{"phi", coefficient_to_json(s.initial.phi)}, {"N0", s.initial.N0}}},
        {"integration",
         json{{"h", s.integration.h},
              {"t_end", s.integration.t_end},
              {"positivity_floor", s.integration.positivity_floor},
              {"max_lag_iterations", s.integration.max_lag_iterations},
              {"enforce_positivity", s.integration.enforce_positivity}}},
        {"analysis",
         json{{"grid_n", s.analysis.grid_n},
              {"quad_n", s.analysis.quad_n},
              {"tol", s.analysis.tol}}},
        {"periodic",
         json{{"seed", coefficient_to_json(s.periodic.seed)},
              {"n_samples", s.periodic.n_samples},
              {"max_iter", s.periodic.max_iter},
              {"tol", s.periodic.tol}}},
        {"outputs",
         json{{"trajectory_csv", s.outputs.trajectory_csv},
              {"report_json", s.outputs.report_json},
              {"sweep_csv", s.outputs.sweep_csv},
              {"oversample", s.outputs.oversample}}}};
    if (s.analysis.horizon) out["analysis"]["horizon"] = *s.analysis.horizon;
    if (s.sweep) {
        json axes = json::array();
        for (const auto& axis : s.sweep->axes)
            axes.push_back(json{{"path", axis.path}, {"values", axis.values}});
        out["sweep"] = json{{"axes", std::move(axes)}};
    }
    return out;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: '" + path + "': " + e.what());
    }
    return scenario_from_json(j);
}

json to_json(const PremiseCheck& check) {
    return json{{"pass", check.pass},
                {"worst_t", check.worst_t},
                {"worst_value", check.worst_value}};
}

json to_json(const PremiseReport& report) {
    return json{{"gamma > 0", to_json(report.gamma_positive)},
                {"r(t) > 0", to_json(report.r_positive)},
                {"b(t) >= b > 0", to_json(report.b_above_floor)},
                {"K(t) >= k > 0", to_json(report.K_above_floor)},
                {"theta(t) >= 0", to_json(report.theta_nonnegative)},
                {"r(t) > b(t)", to_json(report.r_above_b)},
                {"finite coefficient values", to_json(report.finite_values)},
                {"all_pass", report.all_pass()}};
}

json to_json(const BoundsReport& report) {
    return json{{"lower", report.lower},
                {"upper", report.upper},
                {"inner_inf", report.inner_inf},
                {"inner_sup", report.inner_sup},
                {"sup_int_b", report.sup_int_b},
                {"sup_int_rb", report.sup_int_rb},
                {"N0", report.N0},
                {"premises", to_json(report.premises)},
                {"grid",
                 json{{"horizon", report.grid.horizon},
                      {"grid_n", report.grid.grid_n},
                      {"quad_n", report.grid.quad_n}}}};
}

json to_json(const ContainmentVerdict& verdict) {
    json violations = json::array();
    for (const auto& [t, value] : verdict.violations)
        violations.push_back(json{{"t", t}, {"N", value}});
    return json{{"pass", verdict.pass},
                {"tol", verdict.tol},
                {"violations", std::move(violations)}};
}

json to_json(const PeriodicityReport& report) {
    return json{{"m", report.m},
                {"M", report.M},
                {"B", report.B},
                {"condition", to_string(report.condition)},
                {"T", report.T},
                {"grid_n", report.grid_n}};
}

json to_json(const PeriodicSolveResult& result) {
    return json{{"converged", result.converged},
                {"iterations", result.iterations},
                {"residual", result.residual},
                {"periodicity_residual", result.periodicity_residual},
                {"final_segment",
                 json{{"theta_max", result.final_segment.theta_max},
                      {"samples", result.final_segment.samples}}}};
}

}  // namespace harvestdde
