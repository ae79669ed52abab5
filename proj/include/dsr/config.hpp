#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dsr/damping.hpp"
#include "dsr/fluid.hpp"
#include "dsr/rigid.hpp"
#include "dsr/types.hpp"

namespace dsr {

// One experiment, as described by a flat key = value config file. Unset keys
// keep these defaults. `render` then `parse` reproduces the struct exactly.
struct ExperimentConfig {
    std::string model = "rigid";  // "rigid" or "fluid"

    InertiaParams inertias{0.0625, 0.625};
    PDGains gains{1.0, 3.0};
    RampProfile profile{2.0, 2.0};
    double end_time = 30.0;

    // damping (rigid model)
    std::string damping_law = "constant";  // constant | raised-cosine | cosine-squared | tabulated
    double damping_scale = 1.0;
    std::vector<std::pair<double, double>> damping_table;

    // film (fluid model)
    AnnulusFluid fluid{1014.7, 1.17e-6, 0.135, 0.1351};
    int grid_points = 200;

    // integration and output
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.0;     // 0 = automatic
    double output_rate = 0.0;  // 0 = automatic (200/s rigid, ~6000 samples fluid)

    // detectors
    double rate_tolerance = 1e-4;
    double hold_window = 1.0;
    double settle_band = 1e-3;

    // bearing geometry for fluid-speed estimates (optional)
    bool has_bearing = false;
    BearingGeometry bearing{};

    bool operator==(const ExperimentConfig&) const = default;
};

// Parses the flat key = value language: one pair per line, '#' comments,
// blank lines ignored. A `preset = NAME` line loads that preset as the new
// base; later lines override individual keys. Unknown keys and malformed
// numbers are configuration errors naming the line; cross-field rules
// (R_i < R_o, grid_points >= 16, ...) are checked after parsing and name the
// violated rule.
ExperimentConfig parse_config(const std::string& text);

// Inverse of parse_config: every key on its own line, values in shortest
// round-trip decimal form.
std::string render_config(const ExperimentConfig& config);

ExperimentConfig load_preset(const std::string& name);
std::vector<std::string> preset_names();

RigidRunConfig to_rigid_config(const ExperimentConfig& config);
FluidRunConfig to_fluid_config(const ExperimentConfig& config);
DampingLaw to_damping_law(const ExperimentConfig& config);

// Dispatches on config.model.
SimulationTrace run_experiment(const ExperimentConfig& config);

}  // namespace dsr
