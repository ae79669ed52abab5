#include "dsr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "dsr/analytic.hpp"
#include "dsr/errors.hpp"

namespace dsr {

void size_fluid_horizon(ExperimentConfig& config) {
    config.fluid.validate();
    config.inertias.validate();
    config.gains.validate();

    // Three slow clocks bound how long the spin phase must run before the
    // stool rate is genuinely settled rather than still draining:
    //   - the quasi-static stool decay I_tot / k,
    //   - momentum diffusion across the gap,
    //   - the slow closed-loop pole of the wheel controller (c1/c0 when the
    //     derivative gain dominates).
    double k = exact_annular_damping(config.fluid);
    double tau_stool = config.inertias.total() / k;
    double gap = config.fluid.gap();
    double tau_diffusion = gap * gap / config.fluid.kinematic_viscosity;
    double tau_control = config.gains.derivative / config.gains.proportional;

    double initial_rate = config.inertias.wheel_inertia / config.inertias.total() *
                          std::abs(config.profile.steady_rate);
    double tolerance = std::max(config.rate_tolerance, 1e-12);
    double decades = std::log(std::max(initial_rate / tolerance, 10.0));

    double stop = 1.3 * (tau_stool * decades + 3.0 * tau_diffusion + 3.0 * tau_control) +
                  2.0 * config.hold_window;
    config.profile.stop_time = stop;
    config.end_time = 1.02 * stop + 5.0 * config.hold_window;
    config.output_rate = 6000.0 / config.end_time;
}

std::vector<ValidationRow> run_validation_table(const ExperimentConfig& base,
                                                const std::vector<std::pair<double, double>>& pairs_cm,
                                                int jobs) {
    if (pairs_cm.empty()) return {};

    std::vector<ValidationRow> rows(pairs_cm.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= pairs_cm.size() || failed.load()) return;
            try {
                ExperimentConfig cfg = base;
                cfg.model = "fluid";
                cfg.fluid.inner_radius = pairs_cm[i].first / 100.0;
                cfg.fluid.outer_radius = pairs_cm[i].second / 100.0;
                size_fluid_horizon(cfg);

                SimulationTrace trace = simulate_fluid(to_fluid_config(cfg));
                BoundednessResult settled =
                    detect_boundedness(trace, cfg.rate_tolerance, cfg.hold_window);

                ValidationRow row;
                row.inner_cm = pairs_cm[i].first;
                row.outer_cm = pairs_cm[i].second;
                row.gap_percent = (row.outer_cm - row.inner_cm) / row.inner_cm * 100.0;
                row.angle_keff =
                    boundedness_angle(cfg.inertias, cfg.profile.steady_rate, cfg.fluid);
                row.settled = settled.settled;
                if (settled.settled) {
                    row.angle_pde = std::abs(settled.angle);
                    row.percent_error =
                        std::abs(row.angle_keff - row.angle_pde) / row.angle_pde * 100.0;
                }
                rows[i] = row;
            } catch (const std::exception& e) {
                std::scoped_lock lock(error_mutex);
                if (!failed.exchange(true)) first_error = e.what();
                return;
            }
        }
    };

    int thread_count = std::clamp<int>(jobs, 1, static_cast<int>(pairs_cm.size()));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(thread_count));
        for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw NumericalError("validation row failed: " + first_error);
    return rows;
}

}  // namespace dsr
