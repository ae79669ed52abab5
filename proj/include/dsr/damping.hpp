#pragma once

#include <utility>
#include <vector>

namespace dsr {

enum class DampingKind { constant, raised_cosine, cosine_squared, tabulated };

// Angle-dependent damping coefficient k(phi) >= 0 opposing the stool rate.
// The three built-in variants share one normalization: with base scale s,
//   constant        k(phi) = s / (2 pi)
//   raised_cosine   k(phi) = s (1 + cos phi) / (2 pi)
//   cosine_squared  k(phi) = 2 s cos^2(phi) / pi
// so a raw constant coefficient c needs scale 2 pi c. Tabulated laws
// interpolate (angle, coefficient) samples linearly and clamp outside the
// table range.
struct DampingLaw {
    DampingKind kind = DampingKind::constant;
    double scale = 0.0;
    std::vector<std::pair<double, double>> table;  // tabulated only, angles increasing

    static DampingLaw constant(double scale);
    static DampingLaw raised_cosine(double scale);
    static DampingLaw cosine_squared(double scale);
    static DampingLaw tabulated(std::vector<std::pair<double, double>> samples);
    static DampingLaw none() { return constant(0.0); }

    void validate() const;
    bool operator==(const DampingLaw&) const = default;
};

double damping_coefficient(const DampingLaw& law, double angle);

// Integral of the coefficient from angle zero. Closed form for the built-in
// variants; tabulated laws are integrated exactly (the interpolant is
// piecewise linear, so trapezoids on the breakpoints are exact).
double damping_potential(const DampingLaw& law, double angle);

}  // namespace dsr
