#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "doctest.h"
#include "dsr/analytic.hpp"
#include "dsr/config.hpp"
#include "dsr/energy.hpp"
#include "dsr/errors.hpp"
#include "dsr/experiments.hpp"
#include "dsr/fluid.hpp"
#include "dsr/rigid.hpp"

using namespace dsr;

namespace {

constexpr double kPi = std::numbers::pi;

AnnulusFluid wide_film() { return {3.0, 0.05, 1.0, 2.0}; }

// Short coupled run used by several cases; wide gap so the film dynamics are
// visible, fine grid and step so discretization error stays small.
FluidRunConfig short_run_config() {
    FluidRunConfig cfg;
    cfg.inertias = {0.0625, 0.625};
    cfg.fluid = wide_film();
    cfg.gains = {1.0, 3.0};
    cfg.profile = {2.0, 2.0};
    cfg.end_time = 6.0;
    cfg.grid_points = 201;
    cfg.max_step = 2e-3;
    cfg.output_rate = 50.0;
    return cfg;
}

const SimulationTrace& short_run() {
    static SimulationTrace trace = simulate_fluid(short_run_config());
    return trace;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double acc = 0.0;
    for (size_t i = 1; i < x.size(); ++i) acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return acc;
}

}  // namespace

TEST_SUITE("fluid") {

TEST_CASE("grid spans the annulus with exact walls") {
    AnnulusFluid fluid = wide_film();
    RadialGrid grid = build_grid(fluid, 16);
    REQUIRE(grid.size() == 16);
    CHECK(grid.radii.front() == fluid.inner_radius);
    CHECK(grid.radii.back() == fluid.outer_radius);
    CHECK(grid.spacing == doctest::Approx(fluid.gap() / 15.0).epsilon(1e-14));
    for (int i = 1; i < grid.size(); ++i)
        CHECK(grid.radii[i] - grid.radii[i - 1] == doctest::Approx(grid.spacing).epsilon(1e-12));

    CHECK_THROWS_AS(build_grid(fluid, 8), ConfigError);
    CHECK_THROWS_AS(build_grid(fluid, 15), ConfigError);
    AnnulusFluid bad = fluid;
    bad.outer_radius = fluid.inner_radius;
    CHECK_THROWS_AS(build_grid(bad, 64), ConfigError);
}

TEST_CASE("diffusion stencil reproduces the slowest mode") {
    AnnulusFluid fluid = wide_film();
    RadialGrid grid = build_grid(fluid, 201);
    EigenMode mode = eigenvalues(fluid, 1).front();

    FluidState state;
    state.velocity.resize(grid.radii.size());
    double peak = 0.0;
    for (size_t i = 0; i < grid.radii.size(); ++i) {
        state.velocity[i] = mode_shape(mode, grid.radii[i]);
        peak = std::max(peak, std::abs(state.velocity[i]));
    }

    std::vector<double> rhs = pde_rhs(state, fluid, grid);
    CHECK(rhs.front() == 0.0);
    CHECK(rhs.back() == 0.0);
    double worst = 0.0;
    for (size_t i = 1; i + 1 < rhs.size(); ++i)
        worst = std::max(worst, std::abs(rhs[i] + mode.lambda * state.velocity[i]));
    CHECK(worst <= 1e-4 * mode.lambda * peak);
}

TEST_CASE("wall torque matches both closed-form profiles") {
    AnnulusFluid fluid = wide_film();
    RadialGrid grid = build_grid(fluid, 201);
    const double omega = 0.8;

    // The linear narrow-gap profile is exact for the one-sided stencil, so
    // the quasi-static damping constant comes out to rounding.
    FluidState linear;
    linear.rigid.stool_rate = omega;
    linear.velocity.resize(grid.radii.size());
    for (size_t i = 0; i < grid.radii.size(); ++i)
        linear.velocity[i] = linear_limit_profile(fluid, omega, grid.radii[i]);
    double torque_linear = fluid_torque(linear, fluid, grid);
    double keff = effective_damping(fluid);
    CHECK(torque_linear == doctest::Approx(-keff * omega).epsilon(1e-12));

    // The curved steady profile picks up the exact annular constant.
    FluidState couette;
    couette.rigid.stool_rate = omega;
    couette.velocity = steady_couette_profile(fluid, omega, grid);
    const double b = omega * 4.0 / 3.0;  // rate * Ri^2 Ro^2 / (Ro^2 - Ri^2)
    const double a = -b / 4.0;
    CHECK(couette.velocity.front() == doctest::Approx(omega * 1.0).epsilon(1e-14));
    CHECK(couette.velocity.back() == 0.0);
    double mid = 1.5;
    CHECK(couette.velocity[100] == doctest::Approx(a * mid + b / mid).epsilon(1e-12));

    double torque_couette = fluid_torque(couette, fluid, grid);
    double kexact = exact_annular_damping(fluid);
    CHECK(torque_couette == doctest::Approx(-kexact * omega).epsilon(1e-4));
}

TEST_CASE("coupled trace is well formed and slaves the wall samples") {
    const SimulationTrace& trace = short_run();
    const FluidRunConfig cfg = short_run_config();
    REQUIRE(trace.samples.size() > 50);
    REQUIRE(trace.field.size() == trace.samples.size());
    REQUIRE(trace.radii.size() == static_cast<size_t>(cfg.grid_points));
    CHECK(trace.has_fluid);
    CHECK(trace.meta.model == "fluid");
    CHECK(trace.meta.grid_points == cfg.grid_points);
    CHECK(trace.meta.scheme.find("tr-bdf2") != std::string::npos);
    CHECK(trace.samples.front().time == 0.0);
    CHECK(trace.samples.back().time == doctest::Approx(cfg.end_time));
    for (size_t i = 1; i < trace.samples.size(); ++i)
        CHECK(trace.samples[i].time > trace.samples[i - 1].time);

    for (size_t j : {size_t{0}, trace.samples.size() / 3, trace.samples.size() - 1}) {
        CHECK(trace.field[j].front() ==
              cfg.fluid.inner_radius * trace.samples[j].stool_rate);
        CHECK(trace.field[j].back() == 0.0);
        CHECK(trace.samples[j].le == 0.0);
        CHECK(trace.samples[j].fluid_ke >= 0.0);
    }
    for (size_t i = 1; i < trace.samples.size(); ++i)
        CHECK(trace.samples[i].fluid_diss >= trace.samples[i - 1].fluid_diss);

    // column access covers the velocity columns
    std::vector<double> v0 = trace.column("v_0");
    REQUIRE(v0.size() == trace.samples.size());
    CHECK(v0[5] == trace.field[5][0]);
    std::vector<std::string> names = trace.column_names();
    CHECK(names.size() == 13 + trace.radii.size());
    CHECK(std::find(names.begin(), names.end(), "v_200") != names.end());
}

TEST_CASE("implicit stepping is second order in time") {
    FluidRunConfig base = short_run_config();
    base.grid_points = 64;
    base.output_rate = 10.0;

    auto run = [&](double h) {
        FluidRunConfig cfg = base;
        cfg.max_step = h;
        return simulate_fluid(cfg);
    };
    SimulationTrace ref = run(0.00125);
    auto stool_error = [&](const SimulationTrace& trace) {
        REQUIRE(trace.samples.size() == ref.samples.size());
        double worst = 0.0;
        for (size_t i = 0; i < trace.samples.size(); ++i) {
            CHECK(trace.samples[i].time == doctest::Approx(ref.samples[i].time).epsilon(1e-9));
            worst = std::max(worst,
                             std::abs(trace.samples[i].stool_angle - ref.samples[i].stool_angle));
        }
        return worst;
    };

    double e1 = stool_error(run(0.02));
    double e2 = stool_error(run(0.01));
    double e3 = stool_error(run(0.005));
    CHECK(e1 > e2);
    CHECK(e2 > e3);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.4));
    CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.4));
}

TEST_CASE("grid refinement converges at second order") {
    FluidRunConfig base = short_run_config();
    base.max_step = 2e-3;
    base.output_rate = 10.0;

    auto run = [&](int points) {
        FluidRunConfig cfg = base;
        cfg.grid_points = points;
        return simulate_fluid(cfg);
    };
    SimulationTrace ref = run(481);
    auto stool_error = [&](const SimulationTrace& trace) {
        REQUIRE(trace.samples.size() == ref.samples.size());
        double worst = 0.0;
        for (size_t i = 0; i < trace.samples.size(); ++i)
            worst = std::max(worst,
                             std::abs(trace.samples[i].stool_angle - ref.samples[i].stool_angle));
        return worst;
    };

    double e1 = stool_error(run(31));
    double e2 = stool_error(run(61));
    double e3 = stool_error(run(121));
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.4));
    CHECK(e2 / e3 == doctest::Approx(4.2).epsilon(0.4));
}

TEST_CASE("angular momentum leaks only through the outer wall") {
    const SimulationTrace& trace = short_run();
    const FluidRunConfig cfg = short_run_config();
    const auto& radii = trace.radii;
    const double dr = radii[1] - radii[0];
    const double rho = cfg.fluid.density;
    const double ro = cfg.fluid.outer_radius;

    std::vector<double> momentum(trace.samples.size());
    std::vector<double> wall_torque(trace.samples.size());
    for (size_t j = 0; j < trace.samples.size(); ++j) {
        const TraceSample& s = trace.samples[j];
        double rigid = cfg.inertias.wheel_inertia * (s.wheel_rate + s.stool_rate) +
                       cfg.inertias.stool_inertia * s.stool_rate;
        std::vector<double> integrand(radii.size());
        for (size_t i = 0; i < radii.size(); ++i)
            integrand[i] = trace.field[j][i] * radii[i] * radii[i];
        momentum[j] = rigid + 2.0 * kPi * rho * trapezoid(radii, integrand);

        // one-sided gradient at the fixed outer wall, where v itself is zero
        const auto& v = trace.field[j];
        size_t n = v.size();
        double v_r = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * dr);
        wall_torque[j] = 2.0 * kPi * rho * cfg.fluid.kinematic_viscosity * ro * ro * v_r;
    }

    double scale = 0.0;
    double worst = 0.0;
    double leaked = 0.0;
    std::vector<double> t = trace.times();
    for (size_t j = 1; j < momentum.size(); ++j) {
        leaked += 0.5 * (t[j] - t[j - 1]) * (wall_torque[j] + wall_torque[j - 1]);
        scale = std::max(scale, std::abs(momentum[j]) + std::abs(leaked));
        worst = std::max(worst, std::abs(momentum[j] - leaked));
    }
    CHECK(worst <= 1e-2 * scale);
}

TEST_CASE("modal sum reconstructs the simulated field") {
    const SimulationTrace& trace = short_run();
    const FluidRunConfig cfg = short_run_config();
    std::vector<EigenMode> modes = eigenvalues(cfg.fluid, 8);
    std::vector<double> times = trace.times();
    std::vector<double> rates = trace.column("stool_rate");
    const double t_end = times.back();
    const double rate_end = rates.back();

    std::vector<double> amplitude(modes.size());
    for (size_t n = 0; n < modes.size(); ++n)
        amplitude[n] = transient_mode_amplitude(modes[n], times, rates, t_end);

    const double ri = cfg.fluid.inner_radius;
    const double gap = cfg.fluid.gap();
    const std::vector<double>& field = trace.field.back();
    double peak = 0.0;
    for (double v : field) peak = std::max(peak, std::abs(v));
    REQUIRE(peak > 1e-6);

    double worst = 0.0;
    for (size_t i = 0; i < trace.radii.size(); ++i) {
        double r = trace.radii[i];
        double rebuilt = rate_end * ri * (cfg.fluid.outer_radius - r) / gap;
        for (size_t n = 0; n < modes.size(); ++n)
            rebuilt += amplitude[n] * mode_shape(modes[n], r);
        worst = std::max(worst, std::abs(rebuilt - field[i]));
    }
    CHECK(worst <= 5e-3 * peak);
}

TEST_CASE("clamped-wall relaxation decays at twice the slowest rate") {
    AnnulusFluid fluid = wide_film();
    RadialGrid grid = build_grid(fluid, 101);
    EigenMode mode = eigenvalues(fluid, 1).front();

    std::vector<double> field(grid.radii.size());
    for (size_t i = 0; i < field.size(); ++i)
        field[i] = std::sin(kPi * (grid.radii[i] - fluid.inner_radius) / fluid.gap());
    SimulationTrace trace = relax_fluid(field, fluid, grid, 4.0, 200.0);

    std::vector<double> t = trace.times();
    std::vector<double> ke = trace.column("fluid_ke");
    REQUIRE(ke.front() > 0.0);
    CHECK(ke.back() < ke.front());

    // least-squares slope of log KE after the faster modes are gone
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 1.5 || t[i] > 3.5) continue;
        double y = std::log(ke[i]);
        sx += t[i];
        sy += y;
        sxx += t[i] * t[i];
        sxy += t[i] * y;
        ++count;
    }
    REQUIRE(count > 100);
    double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-2.0 * mode.lambda).epsilon(0.05));

    // pure decay: everything the film loses shows up as dissipation
    std::vector<double> diss = trace.column("fluid_diss");
    CHECK(diss.back() == doctest::Approx(ke.front() - ke.back()).epsilon(1e-3));

    CHECK_THROWS_AS(relax_fluid({1.0, 2.0}, fluid, grid, 1.0, 100.0), ConfigError);
    CHECK_THROWS_AS(relax_fluid(field, fluid, grid, 0.0, 100.0), ConfigError);
}

TEST_CASE("spin, brake and recover through the film") {
    FluidRunConfig cfg;
    cfg.inertias = {0.0625, 0.625};
    cfg.fluid = wide_film();
    cfg.gains = {1.0, 3.0};
    cfg.profile = {2.0, 60.0};
    cfg.end_time = 160.0;
    cfg.grid_points = 100;
    SimulationTrace trace = simulate_fluid(cfg);

    // while the wheel holds its rate the stool parks at a bounded angle
    BoundednessResult settled = detect_boundedness(trace, 1e-4, 1.0);
    REQUIRE(settled.settled);
    CHECK(settled.time < cfg.profile.stop_time);
    CHECK(settled.angle < 0.0);
    double quasi_static = cfg.inertias.wheel_inertia * cfg.profile.steady_rate /
                          effective_damping(cfg.fluid);
    CHECK(std::abs(settled.angle) > 0.6 * quasi_static);
    CHECK(std::abs(settled.angle) < 0.95 * quasi_static);

    // after braking the stool winds back to where it started
    RecoveryReport recovery = detect_recovery(trace);
    CHECK(recovery.settled);
    CHECK(recovery.final_angle_residual < 1e-3);
    CHECK(trace.samples.back().wheel_angle ==
          doctest::Approx(cfg.profile.steady_rate * cfg.profile.stop_time).epsilon(1e-6));
}

TEST_CASE("validation rows track the damping-constant prediction") {
    ExperimentConfig base = load_preset("table-3");
    std::vector<std::pair<double, double>> pairs = {{13.5, 13.51}, {13.5, 14.0}};
    std::vector<ValidationRow> rows = run_validation_table(base, pairs, 2);
    REQUIRE(rows.size() == 2);

    CHECK(rows[0].settled);
    CHECK(rows[0].gap_percent == doctest::Approx(0.01 / 13.5 * 100.0).epsilon(1e-9));
    CHECK(rows[0].angle_keff == doctest::Approx(6.1578).epsilon(1e-3));
    CHECK(rows[0].percent_error <= 0.1);

    CHECK(rows[1].settled);
    CHECK(rows[1].angle_keff == doctest::Approx(297.11).epsilon(1e-3));
    CHECK(rows[1].angle_pde == doctest::Approx(291.7).epsilon(0.02));
    CHECK(rows[1].percent_error > 1.2);
    CHECK(rows[1].percent_error < 2.5);
}

TEST_CASE("config validation") {
    FluidRunConfig cfg = short_run_config();
    cfg.grid_points = 8;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = short_run_config();
    cfg.end_time = cfg.profile.stop_time;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = short_run_config();
    cfg.fluid.kinematic_viscosity = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

}  // TEST_SUITE
