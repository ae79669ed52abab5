#pragma once

#include <string>
#include <vector>

#include "dsr/types.hpp"

namespace dsr {

// One output sample of a simulation. Energy columns: ke is the rigid kinetic
// energy, ie the cumulative motor input, le the cumulative dry-damping loss
// (zero in fluid runs), fluid_ke the instantaneous fluid kinetic energy and
// fluid_diss the cumulative viscous dissipation (fluid runs only).
struct TraceSample {
    double time = 0.0;
    double wheel_angle = 0.0;
    double wheel_rate = 0.0;
    double stool_angle = 0.0;
    double stool_rate = 0.0;
    double torque_u = 0.0;       // motor torque between stool and wheel
    double tau = 0.0;            // commanded wheel acceleration
    double desired_angle = 0.0;  // ramp target for the wheel
    double ke = 0.0;
    double ie = 0.0;
    double le = 0.0;
    double fluid_ke = 0.0;
    double fluid_diss = 0.0;
};

struct RunMetadata {
    std::string model;   // "rigid" or "fluid"
    std::string scheme;  // integrator description
    RampProfile profile;
    InertiaParams inertias;
    double rel_tol = 0.0;
    double abs_tol = 0.0;
    int grid_points = 0;           // fluid runs
    double error_estimate = 0.0;   // accumulated local error estimate of the stool angle
    long accepted_steps = 0;
    long rejected_steps = 0;
};

struct SimulationTrace {
    std::vector<TraceSample> samples;
    bool has_fluid = false;
    std::vector<double> radii;                // fluid grid (empty for rigid runs)
    std::vector<std::vector<double>> field;   // velocity samples, one row per trace sample
    RunMetadata meta;

    std::vector<double> times() const;
    // Column by CSV name ("stool_angle", "v_12", ...). Unknown names are a
    // domain error.
    std::vector<double> column(const std::string& name) const;
    std::vector<std::string> column_names() const;
};

}  // namespace dsr
