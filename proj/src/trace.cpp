#include "dsr/trace.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

namespace dsr {

namespace {

const char* const kRigidColumns[] = {"time",        "wheel_angle",   "wheel_rate", "stool_angle",
                                     "stool_rate",  "torque_u",      "tau",        "desired_angle",
                                     "ke",          "ie",            "le"};

double rigid_field(const TraceSample& s, int idx) {
    switch (idx) {
        case 0: return s.time;
        case 1: return s.wheel_angle;
        case 2: return s.wheel_rate;
        case 3: return s.stool_angle;
        case 4: return s.stool_rate;
        case 5: return s.torque_u;
        case 6: return s.tau;
        case 7: return s.desired_angle;
        case 8: return s.ke;
        case 9: return s.ie;
        case 10: return s.le;
        default: return 0.0;
    }
}

}  // namespace

std::vector<double> SimulationTrace::times() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.time);
    return out;
}

std::vector<std::string> SimulationTrace::column_names() const {
    std::vector<std::string> names(std::begin(kRigidColumns), std::end(kRigidColumns));
    if (has_fluid) {
        names.emplace_back("fluid_ke");
        names.emplace_back("fluid_diss");
        for (size_t i = 0; i < radii.size(); ++i) names.push_back("v_" + std::to_string(i));
    }
    return names;
}

std::vector<double> SimulationTrace::column(const std::string& name) const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (int i = 0; i < 11; ++i) {
        if (name == kRigidColumns[i]) {
            for (const auto& s : samples) out.push_back(rigid_field(s, i));
            return out;
        }
    }
    if (has_fluid) {
        if (name == "fluid_ke") {
            for (const auto& s : samples) out.push_back(s.fluid_ke);
            return out;
        }
        if (name == "fluid_diss") {
            for (const auto& s : samples) out.push_back(s.fluid_diss);
            return out;
        }
        if (name.size() > 2 && name[0] == 'v' && name[1] == '_') {
            int idx = -1;
            auto res = std::from_chars(name.data() + 2, name.data() + name.size(), idx);
            if (res.ec == std::errc() && res.ptr == name.data() + name.size() && idx >= 0 &&
                idx < static_cast<int>(radii.size())) {
                for (const auto& row : field) out.push_back(row[idx]);
                return out;
            }
        }
    }
    throw std::domain_error("unknown trace column '" + name + "'");
}

}  // namespace dsr
