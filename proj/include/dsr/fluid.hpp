#pragma once

#include <vector>

#include "dsr/trace.hpp"
#include "dsr/types.hpp"

namespace dsr {

// Uniform radial grid spanning [R_i, R_o] with the endpoints represented
// exactly. Fewer than 16 points is a configuration error.
struct RadialGrid {
    std::vector<double> radii;
    double spacing = 0.0;

    int size() const { return static_cast<int>(radii.size()); }
};

RadialGrid build_grid(const AnnulusFluid& fluid, int points);

// Rigid state plus the sampled azimuthal velocity v(r_i). The wall samples
// are slaved: velocity.front() == R_i * stool_rate, velocity.back() == 0.
struct FluidState {
    RigidState rigid;
    std::vector<double> velocity;
};

struct FluidRunConfig {
    InertiaParams inertias;
    AnnulusFluid fluid;
    PDGains gains;
    RampProfile profile;
    int grid_points = 200;
    double end_time = 0.0;
    double rel_tol = 1e-9;      // recorded; accuracy is driven by the step bound
    double abs_tol = 1e-12;
    double max_step = 0.0;      // > 0: fixed implicit step; 0: automatic ramp-up
    double output_rate = 0.0;   // samples per second; 0 picks ~6000 over the run

    void validate() const;
};

// Viscous torque exerted by the film on the stool through the inner wall:
//   2 pi rho nu R_i (R_i v_r(R_i) - v(R_i))
// with the wall gradient taken one-sided at second order.
double fluid_torque(const FluidState& state, const AnnulusFluid& fluid, const RadialGrid& grid);

// Azimuthal diffusion v_t = nu (v_rr + v_r / r - v / r^2) discretized with
// second-order central differences. Returns one entry per grid point; the
// wall entries are zero because those samples are algebraically slaved.
std::vector<double> pde_rhs(const FluidState& state, const AnnulusFluid& fluid,
                            const RadialGrid& grid);

// Exact steady profile for a steadily rotating inner wall: A r + B / r with
// v(R_i) = inner_rate * R_i and v(R_o) = 0.
std::vector<double> steady_couette_profile(const AnnulusFluid& fluid, double inner_rate,
                                           const RadialGrid& grid);

// Integrates the coupled wheel + stool + film loop from rest. The closed
// loop is linear with piecewise-affine forcing, so the stepper is a one-step
// L-stable implicit scheme (trapezoidal stage + second-order backward stage
// sharing one matrix factorization), second order in the step size; the
// scheme string in the metadata records this. The wheel acceleration is
// checked against the commanded tau every derivative evaluation.
SimulationTrace simulate_fluid(const FluidRunConfig& config);

// Pure film decay with both walls clamped, starting from a given velocity
// field; used for spin-down diagnostics. The returned trace has a frozen
// rigid state and populated fluid energy columns.
SimulationTrace relax_fluid(const std::vector<double>& field, const AnnulusFluid& fluid,
                            const RadialGrid& grid, double duration, double output_rate);

}  // namespace dsr
