#pragma once

#include <vector>

#include "dsr/damping.hpp"
#include "dsr/fluid.hpp"
#include "dsr/trace.hpp"
#include "dsr/types.hpp"

namespace dsr {

// Snapshot of the energy bookkeeping at one instant.
struct EnergyLedger {
    double kinetic_rigid = 0.0;
    double input_energy_cum = 0.0;
    double lost_energy_cum = 0.0;
    double fluid_kinetic = 0.0;
    double fluid_dissipation_cum = 0.0;
    double balance_residual = 0.0;
};

// (1/2) I_w (theta_dot + phi_dot)^2 + (1/2) I_s phi_dot^2. The wheel rate is
// relative to the stool, so its ground-frame rate is the sum.
double kinetic_energy_rigid(const RigidState& state, const InertiaParams& inertias);

// Cumulative motor work, trapezoid over the trace samples of u * theta_dot.
// The torque on the stool side cancels out, so the relative rate is the
// correct power conjugate. This is a plain recomputation from the stored
// columns; the simulators integrate the same product phase-aware across the
// brake-instant torque jump, so near the stop this can differ from the
// stored ie column by one half-interval of the jump.
std::vector<double> input_energy(const SimulationTrace& trace);

// Cumulative dry damping loss, trapezoid over k(phi) phi_dot^2.
std::vector<double> lost_energy(const SimulationTrace& trace, const DampingLaw& law);

// pi rho integral of v^2 r dr per unit depth (trapezoid on the grid, second
// order under refinement). A rigid-rotation field v = Omega r integrates to
// pi rho Omega^2 (R_o^4 - R_i^4) / 4.
double fluid_kinetic_energy(const FluidState& state, const AnnulusFluid& fluid,
                            const RadialGrid& grid);

// Instantaneous viscous dissipation 2 pi rho nu integral of (r d/dr(v/r))^2 r dr
// per unit depth. For the steady annular profile this equals the exact
// damping constant times the wall rate squared.
double fluid_dissipation_rate(const FluidState& state, const AnnulusFluid& fluid,
                              const RadialGrid& grid);

struct BalanceResidual {
    double value = 0.0;  // largest |KE + losses - input| over the trace
    double time = 0.0;
};

// Worst-case energy balance violation over a trace, using the trace's own
// cumulative columns. Rigid runs: ke + le - ie; fluid runs add fluid_ke and
// fluid_diss in place of le.
BalanceResidual energy_balance_residual(const SimulationTrace& trace);

// Per-sample ledgers for a trace (same bookkeeping the residual uses).
std::vector<EnergyLedger> energy_ledgers(const SimulationTrace& trace);

// Lower bound on the film speed (averaged over the film cross-section)
// needed to hold the stool-wheel kinetic energy at the given stool rate:
//   |rate| sqrt((I_w + I_s) / (rho pi ((R_i + t)^2 - R_i^2) h)).
// Used to argue whether the film alone can re-start a stopped stool.
double min_average_fluid_speed(const BearingGeometry& bearing, const InertiaParams& inertias,
                               double stool_rate, double density);

}  // namespace dsr
