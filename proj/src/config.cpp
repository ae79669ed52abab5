#include "dsr/config.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string_view>

#include "dsr/errors.hpp"
#include "dsr/experiments.hpp"
#include "dsr/format.hpp"

namespace dsr {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("line " + std::to_string(line) + ": " + what);
}

double number_or_fail(std::string_view token, const std::string& key, int line) {
    double value = 0.0;
    if (!parse_double(token, value)) fail(line, "cannot parse number for '" + key + "'");
    return value;
}

int integer_or_fail(std::string_view token, const std::string& key, int line) {
    double value = number_or_fail(token, key, line);
    double rounded = std::nearbyint(value);
    if (value != rounded || std::abs(value) > 1e9) fail(line, "'" + key + "' must be an integer");
    return static_cast<int>(rounded);
}

std::vector<std::pair<double, double>> table_or_fail(std::string_view token, int line) {
    std::vector<std::pair<double, double>> table;
    std::string_view rest = token;
    while (!rest.empty()) {
        size_t comma = rest.find(',');
        std::string_view entry = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (entry.empty()) continue;
        size_t colon = entry.find(':');
        if (colon == std::string_view::npos)
            fail(line, "damping_table entries must look like angle:coefficient");
        double angle = number_or_fail(trim(entry.substr(0, colon)), "damping_table", line);
        double coeff = number_or_fail(trim(entry.substr(colon + 1)), "damping_table", line);
        table.emplace_back(angle, coeff);
    }
    if (table.empty()) fail(line, "damping_table needs at least one angle:coefficient entry");
    return table;
}

void check_cross_rules(const ExperimentConfig& cfg) {
    if (cfg.model != "rigid" && cfg.model != "fluid")
        throw ConfigError("model must be 'rigid' or 'fluid', not '" + cfg.model + "'");
    cfg.inertias.validate();
    cfg.gains.validate();
    cfg.profile.validate();
    if (!(cfg.end_time > cfg.profile.stop_time))
        throw ConfigError("end_time must exceed stop_time");
    cfg.fluid.validate();
    if (cfg.grid_points < 16) throw ConfigError("grid_points must be at least 16");
    if (!(cfg.rel_tol > 0.0)) throw ConfigError("rel_tol must be positive");
    if (!(cfg.abs_tol >= 0.0)) throw ConfigError("abs_tol must be non-negative");
    if (!(cfg.max_step >= 0.0)) throw ConfigError("max_step must be non-negative (0 = automatic)");
    if (!(cfg.output_rate >= 0.0)) throw ConfigError("output_rate must be non-negative (0 = automatic)");
    if (!(cfg.rate_tolerance > 0.0)) throw ConfigError("rate_tolerance must be positive");
    if (!(cfg.hold_window > 0.0)) throw ConfigError("hold_window must be positive");
    if (!(cfg.settle_band > 0.0)) throw ConfigError("settle_band must be positive");
    to_damping_law(cfg).validate();
    if (cfg.has_bearing) cfg.bearing.validate();
}

ExperimentConfig figure_base() {
    return ExperimentConfig{};  // the defaults are the braked-spin figure setup
}

ExperimentConfig bearing_estimate_preset() {
    ExperimentConfig c;
    c.model = "rigid";
    c.inertias = {0.5, 0.5};
    c.gains = {1.0, 3.0};
    c.profile = {std::numbers::pi / 30.0, 5.0};  // one revolution per minute
    c.end_time = 20.0;
    c.fluid.density = 1000.0;
    c.has_bearing = true;
    c.bearing = {0.05, 0.01, 0.01};
    return c;
}

ExperimentConfig film_base() {
    ExperimentConfig c;
    c.model = "fluid";
    c.inertias = {6e-3, 1.96};
    c.gains = {1.0, 100.0};
    c.profile.steady_rate = 60.0 * std::numbers::pi;
    c.fluid = {1014.7, 1.17e-6, 0.135, 0.1351};
    c.grid_points = 200;
    c.rate_tolerance = 2e-5;
    size_fluid_horizon(c);
    return c;
}

constexpr std::pair<double, double> kValidationPairsCm[18] = {
    {13.5, 13.51}, {13.5, 13.68}, {13.5, 13.75}, {13.5, 14.0}, {13.5, 14.5},
    {13.5, 15.0},  {13.5, 15.5},  {13.5, 20.0},  {13.5, 27.0}, {27.0, 27.02},
    {27.0, 27.36}, {27.0, 27.5},  {27.0, 28.0},  {27.0, 29.0}, {27.0, 30.0},
    {27.0, 31.0},  {27.0, 40.0},  {27.0, 54.0},
};

ExperimentConfig validation_row_preset(int row) {
    ExperimentConfig c = film_base();
    c.fluid.inner_radius = kValidationPairsCm[row - 1].first / 100.0;
    c.fluid.outer_radius = kValidationPairsCm[row - 1].second / 100.0;
    size_fluid_horizon(c);
    return c;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected key = value");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) fail(line_no, "expected key = value");

        if (key == "preset") {
            try {
                cfg = load_preset(value);
            } catch (const ConfigError& e) {
                fail(line_no, e.what());
            }
        } else if (key == "model") {
            if (value != "rigid" && value != "fluid")
                fail(line_no, "model must be 'rigid' or 'fluid', not '" + value + "'");
            cfg.model = value;
        } else if (key == "wheel_inertia") {
            cfg.inertias.wheel_inertia = number_or_fail(value, key, line_no);
        } else if (key == "stool_inertia") {
            cfg.inertias.stool_inertia = number_or_fail(value, key, line_no);
        } else if (key == "proportional_gain") {
            cfg.gains.proportional = number_or_fail(value, key, line_no);
        } else if (key == "derivative_gain") {
            cfg.gains.derivative = number_or_fail(value, key, line_no);
        } else if (key == "steady_rate") {
            cfg.profile.steady_rate = number_or_fail(value, key, line_no);
        } else if (key == "stop_time") {
            cfg.profile.stop_time = number_or_fail(value, key, line_no);
        } else if (key == "end_time") {
            cfg.end_time = number_or_fail(value, key, line_no);
        } else if (key == "damping_law") {
            if (value != "constant" && value != "raised-cosine" && value != "cosine-squared" &&
                value != "tabulated")
                fail(line_no, "damping_law must be constant, raised-cosine, cosine-squared or tabulated");
            cfg.damping_law = value;
        } else if (key == "damping_scale") {
            cfg.damping_scale = number_or_fail(value, key, line_no);
        } else if (key == "damping_table") {
            cfg.damping_table = table_or_fail(value, line_no);
        } else if (key == "density") {
            cfg.fluid.density = number_or_fail(value, key, line_no);
        } else if (key == "kinematic_viscosity") {
            cfg.fluid.kinematic_viscosity = number_or_fail(value, key, line_no);
        } else if (key == "inner_radius") {
            cfg.fluid.inner_radius = number_or_fail(value, key, line_no);
        } else if (key == "outer_radius") {
            cfg.fluid.outer_radius = number_or_fail(value, key, line_no);
        } else if (key == "grid_points") {
            cfg.grid_points = integer_or_fail(value, key, line_no);
        } else if (key == "rel_tol") {
            cfg.rel_tol = number_or_fail(value, key, line_no);
        } else if (key == "abs_tol") {
            cfg.abs_tol = number_or_fail(value, key, line_no);
        } else if (key == "max_step") {
            cfg.max_step = number_or_fail(value, key, line_no);
        } else if (key == "output_rate") {
            cfg.output_rate = number_or_fail(value, key, line_no);
        } else if (key == "rate_tolerance") {
            cfg.rate_tolerance = number_or_fail(value, key, line_no);
        } else if (key == "hold_window") {
            cfg.hold_window = number_or_fail(value, key, line_no);
        } else if (key == "settle_band") {
            cfg.settle_band = number_or_fail(value, key, line_no);
        } else if (key == "bearing_inner_radius") {
            cfg.bearing.inner_radius = number_or_fail(value, key, line_no);
            cfg.has_bearing = true;
        } else if (key == "bearing_thickness") {
            cfg.bearing.thickness = number_or_fail(value, key, line_no);
            cfg.has_bearing = true;
        } else if (key == "bearing_height") {
            cfg.bearing.height = number_or_fail(value, key, line_no);
            cfg.has_bearing = true;
        } else {
            fail(line_no, "unknown key '" + key + "'");
        }
    }
    check_cross_rules(cfg);
    return cfg;
}

std::string render_config(const ExperimentConfig& c) {
    std::ostringstream out;
    auto put = [&](const char* key, const std::string& value) { out << key << " = " << value << "\n"; };
    auto putd = [&](const char* key, double value) { put(key, format_double(value)); };
    put("model", c.model);
    putd("wheel_inertia", c.inertias.wheel_inertia);
    putd("stool_inertia", c.inertias.stool_inertia);
    putd("proportional_gain", c.gains.proportional);
    putd("derivative_gain", c.gains.derivative);
    putd("steady_rate", c.profile.steady_rate);
    putd("stop_time", c.profile.stop_time);
    putd("end_time", c.end_time);
    put("damping_law", c.damping_law);
    putd("damping_scale", c.damping_scale);
    if (!c.damping_table.empty()) {
        std::string joined;
        for (const auto& [angle, coeff] : c.damping_table) {
            if (!joined.empty()) joined += ",";
            joined += format_double(angle) + ":" + format_double(coeff);
        }
        put("damping_table", joined);
    }
    putd("density", c.fluid.density);
    putd("kinematic_viscosity", c.fluid.kinematic_viscosity);
    putd("inner_radius", c.fluid.inner_radius);
    putd("outer_radius", c.fluid.outer_radius);
    put("grid_points", std::to_string(c.grid_points));
    putd("rel_tol", c.rel_tol);
    putd("abs_tol", c.abs_tol);
    putd("max_step", c.max_step);
    putd("output_rate", c.output_rate);
    putd("rate_tolerance", c.rate_tolerance);
    putd("hold_window", c.hold_window);
    putd("settle_band", c.settle_band);
    if (c.has_bearing) {
        putd("bearing_inner_radius", c.bearing.inner_radius);
        putd("bearing_thickness", c.bearing.thickness);
        putd("bearing_height", c.bearing.height);
    }
    return out.str();
}

ExperimentConfig load_preset(const std::string& name) {
    // The braked-spin demos use a unit raw friction coefficient so the stool
    // visibly rings through zero after the stop; the varying-damping demos
    // keep the revolution-averaged normalization instead.
    if (name == "overshoot") {
        ExperimentConfig c = figure_base();
        c.damping_scale = 2.0 * std::numbers::pi;
        return c;
    }
    if (name == "oscillation") {
        ExperimentConfig c = figure_base();
        c.damping_scale = 2.0 * std::numbers::pi;
        c.gains.derivative = 1.0;
        c.end_time = 40.0;
        return c;
    }
    if (name == "varying-damping-uniform" || name == "varying-damping-raised-cosine" ||
        name == "varying-damping-cosine-squared") {
        ExperimentConfig c = figure_base();
        c.gains.derivative = 1.0;
        c.end_time = 60.0;
        c.damping_law = name.substr(sizeof("varying-damping-") - 1) == "uniform"
                            ? "constant"
                            : name.substr(sizeof("varying-damping-") - 1);
        return c;
    }
    if (name == "table-1") return bearing_estimate_preset();
    if (name == "table-3") return film_base();
    if (name.rfind("appendix-row-", 0) == 0) {
        int row = 0;
        std::string_view tail = std::string_view(name).substr(sizeof("appendix-row-") - 1);
        auto ok = !tail.empty() && tail.size() <= 2 &&
                  std::all_of(tail.begin(), tail.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
        if (ok) row = std::stoi(std::string(tail));
        if (row >= 1 && row <= 18) return validation_row_preset(row);
    }
    throw ConfigError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names = {
        "overshoot",
        "oscillation",
        "varying-damping-uniform",
        "varying-damping-raised-cosine",
        "varying-damping-cosine-squared",
        "table-1",
        "table-3",
    };
    for (int row = 1; row <= 18; ++row) names.push_back("appendix-row-" + std::to_string(row));
    return names;
}

DampingLaw to_damping_law(const ExperimentConfig& c) {
    if (c.damping_law == "constant") return DampingLaw::constant(c.damping_scale);
    if (c.damping_law == "raised-cosine") return DampingLaw::raised_cosine(c.damping_scale);
    if (c.damping_law == "cosine-squared") return DampingLaw::cosine_squared(c.damping_scale);
    if (c.damping_law == "tabulated") return DampingLaw::tabulated(c.damping_table);
    throw ConfigError("damping_law must be constant, raised-cosine, cosine-squared or tabulated");
}

RigidRunConfig to_rigid_config(const ExperimentConfig& c) {
    RigidRunConfig rc;
    rc.inertias = c.inertias;
    rc.law = to_damping_law(c);
    rc.gains = c.gains;
    rc.profile = c.profile;
    rc.end_time = c.end_time;
    rc.rel_tol = c.rel_tol;
    rc.abs_tol = c.abs_tol;
    rc.max_step = c.max_step > 0.0 ? c.max_step : 1.0;
    rc.output_rate = c.output_rate > 0.0 ? c.output_rate : 200.0;
    rc.validate();
    return rc;
}

FluidRunConfig to_fluid_config(const ExperimentConfig& c) {
    FluidRunConfig fc;
    fc.inertias = c.inertias;
    fc.fluid = c.fluid;
    fc.gains = c.gains;
    fc.profile = c.profile;
    fc.grid_points = c.grid_points;
    fc.end_time = c.end_time;
    fc.rel_tol = c.rel_tol;
    fc.abs_tol = c.abs_tol;
    fc.max_step = c.max_step;
    fc.output_rate = c.output_rate;
    fc.validate();
    return fc;
}

SimulationTrace run_experiment(const ExperimentConfig& config) {
    check_cross_rules(config);
    if (config.model == "fluid") return simulate_fluid(to_fluid_config(config));
    return simulate_rigid(to_rigid_config(config));
}

}  // namespace dsr
