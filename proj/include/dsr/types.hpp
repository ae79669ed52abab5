#pragma once

namespace dsr {

// Moments of inertia of the two rigid bodies. The wheel spins relative to the
// stool; the stool (with the person and motor on it) rotates freely about the
// same axis, opposed only by bearing damping or the bearing fluid.
struct InertiaParams {
    double wheel_inertia = 0.0;  // kg m^2
    double stool_inertia = 0.0;  // kg m^2

    double total() const { return wheel_inertia + stool_inertia; }
    void validate() const;
    bool operator==(const InertiaParams&) const = default;
};

// Annular fluid film between the stool shaft (inner wall, rotating with the
// stool) and the fixed bearing housing (outer wall).
struct AnnulusFluid {
    double density = 0.0;              // kg m^-3
    double kinematic_viscosity = 0.0;  // m^2 s^-1
    double inner_radius = 0.0;         // m
    double outer_radius = 0.0;         // m

    double gap() const { return outer_radius - inner_radius; }
    void validate() const;
    bool operator==(const AnnulusFluid&) const = default;
};

// Desired wheel motion: spin up along a ramp, hold a steady rate, brake to a
// dead stop at stop_time.
struct RampProfile {
    double steady_rate = 0.0;  // rad s^-1
    double stop_time = 0.0;    // s

    void validate() const;
    bool operator==(const RampProfile&) const = default;
};

// PD gains for the feedback-linearized wheel loop.
struct PDGains {
    double proportional = 0.0;  // c0, s^-2
    double derivative = 0.0;    // c1, s^-1

    void validate() const;
    bool operator==(const PDGains&) const = default;
};

// State of the rigid (no fluid) stool-wheel system. The wheel angle is
// measured relative to the stool; the stool angle is measured in the ground
// frame.
struct RigidState {
    double time = 0.0;
    double wheel_angle = 0.0;
    double wheel_rate = 0.0;
    double stool_angle = 0.0;
    double stool_rate = 0.0;
};

// Physical dimensions of the stool bearing used for fluid-speed estimates.
struct BearingGeometry {
    double inner_radius = 0.0;  // m
    double thickness = 0.0;     // radial film thickness, m
    double height = 0.0;        // axial height, m

    void validate() const;
    bool operator==(const BearingGeometry&) const = default;
};

}  // namespace dsr
