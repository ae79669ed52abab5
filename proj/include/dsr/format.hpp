#pragma once

#include <string>
#include <string_view>

namespace dsr {

// Shortest decimal form that round-trips to the identical double; all file
// emitters use this so outputs are byte-stable across runs.
std::string format_double(double value);

// Strict double parse of an entire trimmed token; finite results only.
bool parse_double(std::string_view token, double& out);

}  // namespace dsr
