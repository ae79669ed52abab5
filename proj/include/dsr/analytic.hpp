#pragma once

#include <vector>

#include "dsr/types.hpp"

namespace dsr {

// One radial eigenmode of the annular diffusion operator with both walls
// held fixed. The shape is
//   W_n(r) = J1(kappa_n r) + mixing_ratio * Y1(kappa_n r),
// which vanishes at both radii; modes are orthogonal under the weight r.
// forcing_m and forcing_l are the projections of the wall-motion forcing
// onto W_n: the modal amplitude T_n obeys
//   T_n' = -lambda_n T_n + forcing_m * stool_accel + forcing_l * stool_rate.
struct EigenMode {
    int index = 0;             // 1-based
    double kappa = 0.0;        // radial wavenumber, m^-1
    double lambda = 0.0;       // decay rate nu * kappa^2, s^-1
    double mixing_ratio = 0.0;
    double forcing_m = 0.0;    // m (dimension of length)
    double forcing_l = 0.0;    // m s^-1 per unit stool rate
};

// First `count` roots of the cross product
//   J1(kappa R_i) Y1(kappa R_o) - J1(kappa R_o) Y1(kappa R_i) = 0
// with decay rates and forcing projections filled in.
std::vector<EigenMode> eigenvalues(const AnnulusFluid& fluid, int count);

double mode_shape(const EigenMode& mode, double r);

// Modal amplitude T_n at `time` for a sampled stool-rate history given as
// matching (times, rates) arrays starting at the initial rest instant. The
// acceleration term is eliminated by parts, so only rate samples are needed.
// An empty history or a query time outside it is a domain error.
double transient_mode_amplitude(const EigenMode& mode, const std::vector<double>& times,
                                const std::vector<double>& rates, double time);

// Quasi-static narrow-gap velocity profile: linear interpolation between the
// moving inner wall (speed R_i * stool_rate) and the fixed outer wall.
// Radii outside [R_i, R_o] are a domain error.
double linear_limit_profile(const AnnulusFluid& fluid, double stool_rate, double r);

// Damping constant equivalent to the quasi-static linear profile:
//   2 pi rho nu R_o R_i^2 / (R_o - R_i).
double effective_damping(const AnnulusFluid& fluid);

// Damping constant of the exact steady annular (Couette) profile:
//   4 pi rho nu R_i^2 R_o^2 / (R_o^2 - R_i^2).
// Approaches effective_damping as the gap closes; the relative difference is
// exactly (R_o - R_i) / (R_o + R_i).
double exact_annular_damping(const AnnulusFluid& fluid);

// Magnitude of the stool angle at which boundedness is reached while the
// wheel holds `wheel_rate`, using the quasi-static damping constant:
//   |I_w * wheel_rate| (R_o - R_i) / (2 pi rho nu R_o R_i^2).
// The stool comes to rest on the opposite side of the spin direction.
double boundedness_angle(const InertiaParams& inertias, double wheel_rate,
                         const AnnulusFluid& fluid);

}  // namespace dsr
