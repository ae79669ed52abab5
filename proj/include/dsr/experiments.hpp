#pragma once

#include <utility>
#include <vector>

#include "dsr/config.hpp"

namespace dsr {

// One row of the damping-constant validation table: simulate the full film
// model for a radius pair, detect the boundedness angle, and compare with
// the quasi-static prediction.
struct ValidationRow {
    double inner_cm = 0.0;
    double outer_cm = 0.0;
    double gap_percent = 0.0;    // (R_o - R_i) / R_i * 100
    double angle_pde = 0.0;      // |settled stool angle| from the simulation
    double angle_keff = 0.0;     // quasi-static prediction
    double percent_error = 0.0;  // |angle_keff - angle_pde| / angle_pde * 100
    bool settled = true;         // false flags a run that never met the detector
};

// Runs one simulation per (inner_cm, outer_cm) pair, in input order. The
// base config supplies material constants, gains and detector settings; the
// spin duration is re-sized per pair from the slow timescales so every run
// has room to settle. jobs > 1 runs rows concurrently (identical output).
std::vector<ValidationRow> run_validation_table(const ExperimentConfig& base,
                                                const std::vector<std::pair<double, double>>& pairs_cm,
                                                int jobs = 1);

// Spin/brake horizon sizing used by run_validation_table; exposed so presets
// can bake the same numbers into plain configs.
void size_fluid_horizon(ExperimentConfig& config);

}  // namespace dsr
