#pragma once

#include <stdexcept>
#include <string>

namespace dsr {

// Invalid parameter values, malformed config files, bad CLI usage.
// The command line tool maps this to exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Integration failures, root searches that do not converge, and similar
// runtime breakdowns. The command line tool maps this to exit code 2.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dsr
