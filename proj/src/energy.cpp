#include "dsr/energy.hpp"

#include <cmath>
#include <numbers>

#include "dsr/errors.hpp"

namespace dsr {

double kinetic_energy_rigid(const RigidState& state, const InertiaParams& inertias) {
    double wheel_ground_rate = state.wheel_rate + state.stool_rate;
    return 0.5 * inertias.wheel_inertia * wheel_ground_rate * wheel_ground_rate +
           0.5 * inertias.stool_inertia * state.stool_rate * state.stool_rate;
}

namespace {

// Cumulative trapezoid of a per-sample rate over the trace times.
std::vector<double> accumulate_rate(const SimulationTrace& trace,
                                    const std::vector<double>& rate) {
    std::vector<double> out(rate.size(), 0.0);
    for (size_t i = 1; i < rate.size(); ++i) {
        double dt = trace.samples[i].time - trace.samples[i - 1].time;
        out[i] = out[i - 1] + 0.5 * dt * (rate[i] + rate[i - 1]);
    }
    return out;
}

}  // namespace

std::vector<double> input_energy(const SimulationTrace& trace) {
    std::vector<double> rate(trace.samples.size());
    for (size_t i = 0; i < rate.size(); ++i)
        rate[i] = trace.samples[i].torque_u * trace.samples[i].wheel_rate;
    return accumulate_rate(trace, rate);
}

std::vector<double> lost_energy(const SimulationTrace& trace, const DampingLaw& law) {
    std::vector<double> rate(trace.samples.size());
    for (size_t i = 0; i < rate.size(); ++i) {
        const TraceSample& s = trace.samples[i];
        double k = damping_coefficient(law, s.stool_angle);
        rate[i] = k * s.stool_rate * s.stool_rate;
    }
    return accumulate_rate(trace, rate);
}

double fluid_kinetic_energy(const FluidState& state, const AnnulusFluid& fluid,
                            const RadialGrid& grid) {
    const auto& v = state.velocity;
    const int n = grid.size();
    double integral = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        double f0 = v[i] * v[i] * grid.radii[i];
        double f1 = v[i + 1] * v[i + 1] * grid.radii[i + 1];
        integral += 0.5 * grid.spacing * (f0 + f1);
    }
    return std::numbers::pi * fluid.density * integral;
}

double fluid_dissipation_rate(const FluidState& state, const AnnulusFluid& fluid,
                              const RadialGrid& grid) {
    const auto& v = state.velocity;
    const int n = grid.size();
    const double dr = grid.spacing;
    // Shear rate of an azimuthal flow: r d/dr (v / r); squared, weighted by r.
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = v[i] / grid.radii[i];
    auto shear = [&](int i) {
        double ds;
        if (i == 0)
            ds = (-3.0 * s[0] + 4.0 * s[1] - s[2]) / (2.0 * dr);
        else if (i == n - 1)
            ds = (3.0 * s[n - 1] - 4.0 * s[n - 2] + s[n - 3]) / (2.0 * dr);
        else
            ds = (s[i + 1] - s[i - 1]) / (2.0 * dr);
        return grid.radii[i] * ds;
    };
    double integral = 0.0;
    double prev = shear(0) * shear(0) * grid.radii[0];
    for (int i = 1; i < n; ++i) {
        double cur = shear(i) * shear(i) * grid.radii[i];
        integral += 0.5 * dr * (prev + cur);
        prev = cur;
    }
    return 2.0 * std::numbers::pi * fluid.density * fluid.kinematic_viscosity * integral;
}

std::vector<EnergyLedger> energy_ledgers(const SimulationTrace& trace) {
    std::vector<EnergyLedger> out(trace.samples.size());
    for (size_t i = 0; i < trace.samples.size(); ++i) {
        const TraceSample& s = trace.samples[i];
        EnergyLedger& ledger = out[i];
        ledger.kinetic_rigid = s.ke;
        ledger.input_energy_cum = s.ie;
        ledger.lost_energy_cum = s.le;
        ledger.fluid_kinetic = s.fluid_ke;
        ledger.fluid_dissipation_cum = s.fluid_diss;
        ledger.balance_residual = s.ke + s.le + s.fluid_ke + s.fluid_diss - s.ie;
    }
    return out;
}

BalanceResidual energy_balance_residual(const SimulationTrace& trace) {
    BalanceResidual worst;
    for (const TraceSample& s : trace.samples) {
        double r = s.ke + s.le + s.fluid_ke + s.fluid_diss - s.ie;
        if (std::abs(r) > std::abs(worst.value)) {
            worst.value = r;
            worst.time = s.time;
        }
    }
    return worst;
}

double min_average_fluid_speed(const BearingGeometry& bearing, const InertiaParams& inertias,
                               double stool_rate, double density) {
    bearing.validate();
    inertias.validate();
    if (!(density > 0.0)) throw ConfigError("density must be positive");
    double outer = bearing.inner_radius + bearing.thickness;
    double annulus_mass = density * std::numbers::pi *
                          (outer * outer - bearing.inner_radius * bearing.inner_radius) *
                          bearing.height;
    return std::abs(stool_rate) * std::sqrt(inertias.total() / annulus_mass);
}

}  // namespace dsr
