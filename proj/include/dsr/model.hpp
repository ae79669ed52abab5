#pragma once

#include "dsr/damping.hpp"
#include "dsr/types.hpp"

namespace dsr {

// Desired wheel angle: steady_rate * min(t, stop_time). Negative times are a
// domain error.
double ramp_position(const RampProfile& profile, double time);

// Desired wheel rate: steady_rate before the braking instant, zero after.
double ramp_rate(const RampProfile& profile, double time);

// First integral of the rigid dynamics when started from rest:
//   (I_w + I_s) phi_dot + I_w theta_dot + integral of k over the stool angle.
// Conserved exactly along trajectories; its drift measures integrator error.
double damping_induced_momentum(const RigidState& state, const InertiaParams& inertias,
                                const DampingLaw& law);

}  // namespace dsr
