#include "dsr/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dsr/errors.hpp"

namespace dsr {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

void InertiaParams::validate() const {
    if (!(wheel_inertia > 0.0)) throw ConfigError("wheel_inertia must be positive");
    if (!(stool_inertia > 0.0)) throw ConfigError("stool_inertia must be positive");
}

void AnnulusFluid::validate() const {
    if (!(density > 0.0)) throw ConfigError("density must be positive");
    if (!(kinematic_viscosity > 0.0)) throw ConfigError("kinematic_viscosity must be positive");
    if (!(inner_radius > 0.0 && inner_radius < outer_radius))
        throw ConfigError("annulus radii must satisfy 0 < R_i < R_o");
}

void RampProfile::validate() const {
    if (!(stop_time > 0.0)) throw ConfigError("stop_time must be positive");
    if (!std::isfinite(steady_rate)) throw ConfigError("steady_rate must be finite");
}

void PDGains::validate() const {
    if (!(proportional >= 0.0)) throw ConfigError("proportional gain must be nonnegative");
    if (!(derivative >= 0.0)) throw ConfigError("derivative gain must be nonnegative");
    if (proportional == 0.0 && derivative == 0.0)
        throw ConfigError("at least one PD gain must be positive");
}

void BearingGeometry::validate() const {
    if (!(inner_radius > 0.0)) throw ConfigError("bearing inner_radius must be positive");
    if (!(thickness > 0.0)) throw ConfigError("bearing thickness must be positive");
    if (!(height > 0.0)) throw ConfigError("bearing height must be positive");
}

DampingLaw DampingLaw::constant(double scale) {
    DampingLaw law;
    law.kind = DampingKind::constant;
    law.scale = scale;
    return law;
}

DampingLaw DampingLaw::raised_cosine(double scale) {
    DampingLaw law;
    law.kind = DampingKind::raised_cosine;
    law.scale = scale;
    return law;
}

DampingLaw DampingLaw::cosine_squared(double scale) {
    DampingLaw law;
    law.kind = DampingKind::cosine_squared;
    law.scale = scale;
    return law;
}

DampingLaw DampingLaw::tabulated(std::vector<std::pair<double, double>> samples) {
    DampingLaw law;
    law.kind = DampingKind::tabulated;
    law.table = std::move(samples);
    law.validate();
    return law;
}

void DampingLaw::validate() const {
    if (kind == DampingKind::tabulated) {
        if (table.size() < 2) throw ConfigError("tabulated damping needs at least two samples");
        for (size_t i = 0; i < table.size(); ++i) {
            if (!(table[i].second >= 0.0))
                throw ConfigError("tabulated damping coefficients must be nonnegative");
            if (i > 0 && !(table[i].first > table[i - 1].first))
                throw ConfigError("tabulated damping angles must be strictly increasing");
        }
    } else {
        if (!(scale >= 0.0)) throw ConfigError("damping scale must be nonnegative");
    }
}

namespace {

double table_value(const std::vector<std::pair<double, double>>& table, double angle) {
    if (angle <= table.front().first) return table.front().second;
    if (angle >= table.back().first) return table.back().second;
    auto hi = std::lower_bound(table.begin(), table.end(), angle,
                               [](const auto& row, double a) { return row.first < a; });
    auto lo = hi - 1;
    double w = (angle - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
}

// Exact integral of the clamped piecewise-linear interpolant from 0 to angle.
// Trapezoids between breakpoints are exact because the integrand is linear
// there; the clamped tails are constant.
double table_integral(const std::vector<std::pair<double, double>>& table, double angle) {
    if (angle == 0.0) return 0.0;
    const double lo = std::min(0.0, angle);
    const double hi = std::max(0.0, angle);
    double acc = 0.0;
    double x = lo;
    double k = table_value(table, lo);
    for (const auto& [bx, bk] : table) {
        if (bx <= x) continue;
        if (bx >= hi) break;
        acc += (bx - x) * 0.5 * (k + bk);
        x = bx;
        k = bk;
    }
    double k_end = table_value(table, hi);
    acc += (hi - x) * 0.5 * (k + k_end);
    return angle > 0.0 ? acc : -acc;
}

}  // namespace

double damping_coefficient(const DampingLaw& law, double angle) {
    switch (law.kind) {
        case DampingKind::constant:
            return law.scale / two_pi;
        case DampingKind::raised_cosine:
            return law.scale * (1.0 + std::cos(angle)) / two_pi;
        case DampingKind::cosine_squared: {
            double c = std::cos(angle);
            return 2.0 * law.scale * c * c / std::numbers::pi;
        }
        case DampingKind::tabulated:
            return table_value(law.table, angle);
    }
    return 0.0;
}

double damping_potential(const DampingLaw& law, double angle) {
    switch (law.kind) {
        case DampingKind::constant:
            return law.scale * angle / two_pi;
        case DampingKind::raised_cosine:
            return law.scale * (angle + std::sin(angle)) / two_pi;
        case DampingKind::cosine_squared:
            // integral of 2 cos^2 = angle + sin(2 angle)/2
            return law.scale * (angle + 0.5 * std::sin(2.0 * angle)) / std::numbers::pi;
        case DampingKind::tabulated:
            return table_integral(law.table, angle);
    }
    return 0.0;
}

double ramp_position(const RampProfile& profile, double time) {
    if (time < 0.0) throw std::domain_error("ramp_position: time must be nonnegative");
    return profile.steady_rate * std::min(time, profile.stop_time);
}

double ramp_rate(const RampProfile& profile, double time) {
    if (time < 0.0) throw std::domain_error("ramp_rate: time must be nonnegative");
    return time < profile.stop_time ? profile.steady_rate : 0.0;
}

double damping_induced_momentum(const RigidState& state, const InertiaParams& inertias,
                                const DampingLaw& law) {
    return inertias.total() * state.stool_rate + inertias.wheel_inertia * state.wheel_rate +
           damping_potential(law, state.stool_angle);
}

}  // namespace dsr
