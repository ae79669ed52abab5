#include "dsr/rigid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dsr/energy.hpp"
#include "dsr/errors.hpp"
#include "dsr/model.hpp"

namespace dsr {

void RigidRunConfig::validate() const {
    inertias.validate();
    law.validate();
    gains.validate();
    profile.validate();
    if (!(end_time > profile.stop_time))
        throw ConfigError("end_time must exceed stop_time");
    if (!(rel_tol > 0.0 && rel_tol <= 1e-2))
        throw ConfigError("rel_tol must lie in (0, 1e-2]");
    if (!(abs_tol >= 0.0 && abs_tol <= 1e-2))
        throw ConfigError("abs_tol must lie in [0, 1e-2]");
    if (!(max_step > 0.0)) throw ConfigError("max_step must be positive");
    if (!(output_rate > 0.0)) throw ConfigError("output_rate must be positive");
}

namespace {

// Desired ramp evaluated phase-aware: inside the braked phase the desired
// rate is zero even at the phase boundary, while the desired angle stays
// continuous.
struct RampEval {
    double angle;
    double rate;
};

RampEval eval_ramp(const RampProfile& profile, double t, bool braked) {
    RampEval e;
    e.angle = profile.steady_rate * std::min(t, profile.stop_time);
    e.rate = braked ? 0.0 : profile.steady_rate;
    return e;
}

struct Derivs {
    double y[4];   // d/dt of wheel_angle, wheel_rate, stool_angle, stool_rate
    double tau;
    double torque;
    double desired_angle;
};

Derivs rigid_rhs(double t, const double y[4], bool braked, const RigidRunConfig& cfg) {
    RigidState s{t, y[0], y[1], y[2], y[3]};
    RampEval d = eval_ramp(cfg.profile, t, braked);
    double tau = cfg.gains.derivative * (d.rate - s.wheel_rate) +
                 cfg.gains.proportional * (d.angle - s.wheel_angle);
    double k = damping_coefficient(cfg.law, s.stool_angle);
    double u = cfg.inertias.wheel_inertia / cfg.inertias.total() *
               (cfg.inertias.stool_inertia * tau - k * s.stool_rate);
    RigidAccel acc = rigid_derivatives(s, u, cfg.inertias, cfg.law);
    return Derivs{{s.wheel_rate, acc.wheel, s.stool_rate, acc.stool}, tau, u, d.angle};
}

// Dormand-Prince 5(4) coefficients.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = B1 - 5179.0 / 57600, E3 = B3 - 7571.0 / 16695, E4 = B4 - 393.0 / 640,
                 E5 = B5 + 92097.0 / 339200, E6 = B6 - 187.0 / 2100, E7 = -1.0 / 40;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

struct StepperStats {
    long accepted = 0;
    long rejected = 0;
    double stool_angle_error = 0.0;  // accumulated local estimates
};

void check_finite(const double y[4], double t) {
    for (int i = 0; i < 4; ++i)
        if (!std::isfinite(y[i]))
            throw NumericalError("rigid integration diverged at t = " + std::to_string(t));
}

}  // namespace

double control_torque_rigid(const RigidState& state, const PDGains& gains,
                            const RampProfile& profile, const InertiaParams& inertias,
                            const DampingLaw& law) {
    bool braked = state.time >= profile.stop_time;
    RampEval d = eval_ramp(profile, state.time, braked);
    double tau = gains.derivative * (d.rate - state.wheel_rate) +
                 gains.proportional * (d.angle - state.wheel_angle);
    double k = damping_coefficient(law, state.stool_angle);
    return inertias.wheel_inertia / inertias.total() *
           (inertias.stool_inertia * tau - k * state.stool_rate);
}

RigidAccel rigid_derivatives(const RigidState& state, double torque, const InertiaParams& inertias,
                             const DampingLaw& law) {
    double k = damping_coefficient(law, state.stool_angle);
    RigidAccel acc;
    acc.stool = (-k * state.stool_rate - torque) / inertias.stool_inertia;
    acc.wheel = torque / inertias.wheel_inertia - acc.stool;
    return acc;
}

SimulationTrace simulate_rigid(const RigidRunConfig& cfg) {
    cfg.validate();

    SimulationTrace trace;
    trace.meta.model = "rigid";
    trace.meta.scheme = "dormand-prince 5(4), adaptive, braking restart";
    trace.meta.profile = cfg.profile;
    trace.meta.inertias = cfg.inertias;
    trace.meta.rel_tol = cfg.rel_tol;
    trace.meta.abs_tol = cfg.abs_tol;

    const double out_dt = 1.0 / cfg.output_rate;
    StepperStats stats;

    double y[4] = {0.0, 0.0, 0.0, 0.0};

    // Motor power per sample, two-sided: the commanded torque jumps at the
    // braking instant, so the sample recorded there closes the spin phase
    // with the pre-brake power and opens the braked phase with the post-brake
    // one. Everywhere else the two coincide.
    std::vector<double> power_close, power_open;

    auto record = [&](double t, bool braked) {
        Derivs d = rigid_rhs(t, y, braked, cfg);
        TraceSample s;
        s.time = t;
        s.wheel_angle = y[0];
        s.wheel_rate = y[1];
        s.stool_angle = y[2];
        s.stool_rate = y[3];
        s.tau = d.tau;
        s.torque_u = d.torque;
        s.desired_angle = d.desired_angle;
        trace.samples.push_back(s);
        power_close.push_back(d.torque * y[1]);
        power_open.push_back(d.torque * y[1]);
    };

    record(0.0, false);
    long next_out = 1;  // output sample index, time = next_out * out_dt

    const double phase_ends[2] = {cfg.profile.stop_time, cfg.end_time};
    double t = 0.0;
    for (int phase = 0; phase < 2; ++phase) {
        const bool braked = phase == 1;
        const double t_end = phase_ends[phase];
        if (t >= t_end) continue;

        Derivs k1 = rigid_rhs(t, y, braked, cfg);
        double h = std::min({cfg.max_step, out_dt, t_end - t});
        while (t < t_end) {
            // Aim exactly at the next event: an output sample or the phase end.
            double t_event = std::min(t_end, next_out * out_dt);
            h = std::min(h, t_event - t);
            if (h < 16.0 * 2.220446049250313e-16 * std::max(1.0, std::abs(t)))
                throw NumericalError("rigid step size underflow at t = " + std::to_string(t));

            double y2[4], y3[4], y4[4], y5[4], y6[4], y7[4];
            for (int i = 0; i < 4; ++i) y2[i] = y[i] + h * A21 * k1.y[i];
            Derivs k2 = rigid_rhs(t + C2 * h, y2, braked, cfg);
            for (int i = 0; i < 4; ++i) y3[i] = y[i] + h * (A31 * k1.y[i] + A32 * k2.y[i]);
            Derivs k3 = rigid_rhs(t + C3 * h, y3, braked, cfg);
            for (int i = 0; i < 4; ++i)
                y4[i] = y[i] + h * (A41 * k1.y[i] + A42 * k2.y[i] + A43 * k3.y[i]);
            Derivs k4 = rigid_rhs(t + C4 * h, y4, braked, cfg);
            for (int i = 0; i < 4; ++i)
                y5[i] = y[i] + h * (A51 * k1.y[i] + A52 * k2.y[i] + A53 * k3.y[i] + A54 * k4.y[i]);
            Derivs k5 = rigid_rhs(t + C5 * h, y5, braked, cfg);
            for (int i = 0; i < 4; ++i)
                y6[i] = y[i] + h * (A61 * k1.y[i] + A62 * k2.y[i] + A63 * k3.y[i] + A64 * k4.y[i] +
                                    A65 * k5.y[i]);
            Derivs k6 = rigid_rhs(t + h, y6, braked, cfg);
            for (int i = 0; i < 4; ++i)
                y7[i] = y[i] + h * (B1 * k1.y[i] + B3 * k3.y[i] + B4 * k4.y[i] + B5 * k5.y[i] +
                                    B6 * k6.y[i]);
            Derivs k7 = rigid_rhs(t + h, y7, braked, cfg);

            double err = 0.0;
            double err_stool = 0.0;
            for (int i = 0; i < 4; ++i) {
                double e = h * (E1 * k1.y[i] + E3 * k3.y[i] + E4 * k4.y[i] + E5 * k5.y[i] +
                                E6 * k6.y[i] + E7 * k7.y[i]);
                double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y7[i]));
                err += (e / sc) * (e / sc);
                if (i == 2) err_stool = std::abs(e);
            }
            err = std::sqrt(err / 4.0);

            if (err <= 1.0) {
                t += h;
                for (int i = 0; i < 4; ++i) y[i] = y7[i];
                check_finite(y, t);
                k1 = k7;  // first-same-as-last
                ++stats.accepted;
                stats.stool_angle_error += err_stool;

                bool at_event = std::abs(t - t_event) <= 1e-12 * std::max(1.0, std::abs(t_event));
                if (at_event) {
                    t = t_event;
                    bool is_output = std::abs(t - next_out * out_dt) <=
                                     1e-9 * std::max(1.0, std::abs(t));
                    bool is_phase_end = t >= t_end;
                    // The sample at the braking instant itself is recorded by
                    // the braked phase so the torque jump is visible.
                    if (is_phase_end && phase == 0) {
                        if (is_output) ++next_out;
                        break;
                    }
                    if (is_output || is_phase_end) record(t, braked);
                    if (is_output) ++next_out;
                    if (is_phase_end) break;
                }
                double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
                h = std::min(cfg.max_step, h * std::clamp(grow, 0.2, 5.0));
            } else {
                ++stats.rejected;
                double shrink = 0.9 * std::pow(err, -0.2);
                h *= std::clamp(shrink, 0.1, 0.9);
            }
        }
        if (phase == 0) {
            t = cfg.profile.stop_time;
            Derivs pre = rigid_rhs(t, y, false, cfg);
            record(t, true);
            power_close.back() = pre.torque * y[1];
        }
    }

    trace.meta.accepted_steps = stats.accepted;
    trace.meta.rejected_steps = stats.rejected;
    trace.meta.error_estimate = stats.stool_angle_error;

    // Energy bookkeeping over the recorded samples. The damping loss is
    // continuous across the brake, so a plain trapezoid serves it.
    std::vector<double> ie(trace.samples.size(), 0.0);
    for (size_t i = 1; i < trace.samples.size(); ++i) {
        double dt = trace.samples[i].time - trace.samples[i - 1].time;
        ie[i] = ie[i - 1] + 0.5 * dt * (power_open[i - 1] + power_close[i]);
    }
    std::vector<double> le = lost_energy(trace, cfg.law);
    for (size_t i = 0; i < trace.samples.size(); ++i) {
        TraceSample& s = trace.samples[i];
        RigidState rs{s.time, s.wheel_angle, s.wheel_rate, s.stool_angle, s.stool_rate};
        s.ke = kinetic_energy_rigid(rs, cfg.inertias);
        s.ie = ie[i];
        s.le = le[i];
    }
    return trace;
}

BoundednessResult detect_boundedness(const SimulationTrace& trace, double rate_tolerance,
                                     double hold_window) {
    BoundednessResult result;
    const auto& samples = trace.samples;
    if (samples.empty()) return result;
    const double steady = trace.meta.profile.steady_rate;
    const double wheel_band = 0.01 * std::abs(steady);

    auto ok = [&](const TraceSample& s) {
        return std::abs(s.stool_rate) < rate_tolerance &&
               std::abs(s.wheel_rate - steady) <= wheel_band;
    };

    size_t window_start = 0;
    bool in_window = false;
    for (size_t i = 0; i < samples.size(); ++i) {
        if (ok(samples[i])) {
            if (!in_window) {
                window_start = i;
                in_window = true;
            }
            if (samples[i].time - samples[window_start].time >= hold_window) {
                result.settled = true;
                result.time = samples[window_start].time;
                result.angle = samples[i].stool_angle;
                return result;
            }
        } else {
            in_window = false;
        }
    }
    return result;
}

namespace {

RecoveryReport analyze_series(const std::vector<double>& times, const std::vector<double>& values,
                              double window_start, double band) {
    RecoveryReport report;
    size_t begin = 0;
    while (begin < times.size() && times[begin] < window_start) ++begin;
    if (begin >= times.size()) return report;

    report.final_angle_residual = std::abs(values.back());

    // Hysteresis: arm on the first excursion beyond the band, then count a
    // crossing each time the series reaches the band on the other side. The
    // peak overshoot is the largest excursion on the far side of zero (with
    // respect to the initial approach) after the first crossing.
    int armed = 0;
    int initial_sign = 0;
    size_t first_cross = times.size();
    for (size_t i = begin; i < values.size(); ++i) {
        double v = values[i];
        if (armed == 0) {
            if (std::abs(v) > band) {
                armed = v > 0.0 ? 1 : -1;
                initial_sign = armed;
            }
            continue;
        }
        if (-armed * v >= band) {
            ++report.zero_crossing_count;
            if (first_cross == times.size()) first_cross = i;
            armed = -armed;
        }
    }
    for (size_t i = first_cross; i < values.size(); ++i)
        report.peak_overshoot = std::max(report.peak_overshoot, -initial_sign * values[i]);

    // Settle time: first instant after which the series stays inside the band.
    size_t last_outside = times.size();
    for (size_t i = values.size(); i-- > begin;) {
        if (std::abs(values[i]) > band) {
            last_outside = i;
            break;
        }
    }
    if (last_outside == times.size()) {
        report.settled = true;
        report.settle_time = times[begin];
    } else if (last_outside + 1 < times.size()) {
        report.settled = true;
        report.settle_time = times[last_outside + 1];
    } else {
        report.settled = false;
        report.settle_time = times.back();
    }
    return report;
}

}  // namespace

RecoveryReport detect_recovery(const SimulationTrace& trace, double settle_band) {
    std::vector<double> t = trace.times();
    std::vector<double> phi = trace.column("stool_angle");
    return analyze_series(t, phi, trace.meta.profile.stop_time, settle_band);
}

RecoveryReport series_recovery(const std::vector<double>& times, const std::vector<double>& values,
                               double window_start, double band) {
    if (times.size() != values.size())
        throw std::domain_error("series_recovery: mismatched series lengths");
    return analyze_series(times, values, window_start, band);
}

std::optional<double> first_overshoot_extremum(const std::vector<double>& times,
                                               const std::vector<double>& values,
                                               double window_start, double band) {
    if (times.size() != values.size() || times.size() < 3) return std::nullopt;
    size_t begin = 0;
    while (begin < times.size() && times[begin] < window_start) ++begin;

    int armed = 0;
    size_t cross = times.size();
    for (size_t i = begin; i < values.size(); ++i) {
        double v = values[i];
        if (armed == 0) {
            if (std::abs(v) > band) armed = v > 0.0 ? 1 : -1;
            continue;
        }
        if (-armed * v >= band) {
            cross = i;
            break;
        }
    }
    if (cross == times.size()) return std::nullopt;

    for (size_t i = std::max(cross, size_t{1}); i + 1 < values.size(); ++i) {
        double dv_prev = values[i] - values[i - 1];
        double dv_next = values[i + 1] - values[i];
        if (dv_prev * dv_next <= 0.0 && std::abs(values[i]) > 0.5 * band) return times[i];
    }
    return std::nullopt;
}

}  // namespace dsr
