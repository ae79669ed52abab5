#pragma once

#include <optional>
#include <vector>

#include "dsr/damping.hpp"
#include "dsr/trace.hpp"
#include "dsr/types.hpp"

namespace dsr {

struct RigidRunConfig {
    InertiaParams inertias;
    DampingLaw law;
    PDGains gains;
    RampProfile profile;
    double end_time = 0.0;       // must exceed profile.stop_time
    double rel_tol = 1e-9;       // in (0, 1e-2]
    double abs_tol = 1e-12;
    double max_step = 1.0;       // s
    double output_rate = 200.0;  // samples per second

    void validate() const;
};

// Motor torque that feedback-linearizes the wheel: with
//   tau = c1 (ramp rate - wheel rate) + c0 (ramp angle - wheel angle)
// the torque u = I_w/(I_w+I_s) * (I_s tau - k(phi) phi_dot) makes the wheel
// obey theta_dd = tau exactly.
double control_torque_rigid(const RigidState& state, const PDGains& gains,
                            const RampProfile& profile, const InertiaParams& inertias,
                            const DampingLaw& law);

struct RigidAccel {
    double wheel = 0.0;  // theta_dd (relative to the stool)
    double stool = 0.0;  // phi_dd
};

// Physical accelerations under a given motor torque. The control identity
// theta_dd == tau is emergent, not substituted.
RigidAccel rigid_derivatives(const RigidState& state, double torque,
                             const InertiaParams& inertias, const DampingLaw& law);

// Integrates the closed loop from rest with an adaptive embedded Runge-Kutta
// pair, restarting cleanly at the braking instant. Step underflow or a
// non-finite state raises NumericalError.
SimulationTrace simulate_rigid(const RigidRunConfig& config);

struct BoundednessResult {
    bool settled = false;
    double angle = 0.0;  // stool angle once the rate has stayed inside the tolerance
    double time = 0.0;   // start of the qualifying window
};

// First time the stool rate magnitude stays below rate_tolerance for a full
// hold_window while the wheel rate is within 1% of the steady rate. An
// unsettled run reports settled = false rather than throwing.
BoundednessResult detect_boundedness(const SimulationTrace& trace, double rate_tolerance = 1e-4,
                                     double hold_window = 1.0);

struct RecoveryReport {
    double final_angle_residual = 0.0;  // |stool angle| at the end of the trace
    double peak_overshoot = 0.0;        // largest excursion past zero after the first crossing
    int zero_crossing_count = 0;        // band-filtered sign changes after braking
    double settle_time = 0.0;           // first time the angle stays inside the band
    bool settled = false;
};

// Post-braking recovery metrics of the stool angle, with hysteresis: a
// crossing only counts once the angle has moved settle_band past zero on the
// other side.
RecoveryReport detect_recovery(const SimulationTrace& trace, double settle_band = 1e-3);

// Same analysis for an arbitrary series (e.g. the wheel tracking error),
// restricted to times at or after window_start.
RecoveryReport series_recovery(const std::vector<double>& times, const std::vector<double>& values,
                               double window_start, double band);

// Time of the first local extremum after the series' first band-crossing of
// zero at or past window_start; empty if the series never crosses or never
// turns around afterwards. Captures the peak of the first overshoot swing.
std::optional<double> first_overshoot_extremum(const std::vector<double>& times,
                                               const std::vector<double>& values,
                                               double window_start, double band);

}  // namespace dsr
