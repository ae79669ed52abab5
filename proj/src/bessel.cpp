#include "dsr/bessel.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dsr/errors.hpp"

namespace dsr {

namespace {

// The annulus eigenproblem leans hard on these functions, so distrust the
// platform once per process: J1 Y0 - J0 Y1 = 2/(pi x) must hold across the
// argument range we ever evaluate.
void check_wronskian() {
    const double probes[] = {1e-6, 0.07, 0.6, 1.3, 2.9, 7.7, 19.0, 83.0, 641.0, 4413.0, 9.9e4};
    for (double x : probes) {
        double w = std::cyl_bessel_j(1.0, x) * std::cyl_neumann(0.0, x) -
                   std::cyl_bessel_j(0.0, x) * std::cyl_neumann(1.0, x);
        double expected = 2.0 / (std::numbers::pi * x);
        if (!(std::abs(w - expected) <= 1e-11 * std::abs(expected)))
            throw NumericalError("cylinder function self test failed at x = " + std::to_string(x));
    }
}

void ensure_checked() {
    static std::once_flag flag;
    std::call_once(flag, check_wronskian);
}

}  // namespace

double bessel_j0(double x) {
    ensure_checked();
    return std::cyl_bessel_j(0.0, std::abs(x));
}

double bessel_j1(double x) {
    ensure_checked();
    double v = std::cyl_bessel_j(1.0, std::abs(x));
    return x < 0.0 ? -v : v;
}

double bessel_y0(double x) {
    ensure_checked();
    if (!(x > 0.0)) throw std::domain_error("bessel_y0: requires x > 0");
    return std::cyl_neumann(0.0, x);
}

double bessel_y1(double x) {
    ensure_checked();
    if (!(x > 0.0)) throw std::domain_error("bessel_y1: requires x > 0");
    return std::cyl_neumann(1.0, x);
}

double bessel_j1_prime(double x) { return bessel_j0(x) - bessel_j1(x) / x; }

double bessel_y1_prime(double x) { return bessel_y0(x) - bessel_y1(x) / x; }

}  // namespace dsr
