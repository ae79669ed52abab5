#include "dsr/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dsr/bessel.hpp"
#include "dsr/errors.hpp"

namespace dsr {

namespace {

constexpr double pi = std::numbers::pi;

// Adaptive Simpson with the usual 1/15 Richardson error estimate.
template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0) throw NumericalError("mode projection quadrature failed to converge");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Seeded with several panels so an oscillatory integrand cannot fool the
// first Richardson estimate.
template <class F>
double integrate(const F& f, double a, double b, double tol) {
    const int panels = 8;
    double acc = 0.0;
    double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
        double f0 = f(x0), f1 = f(x1), fm = f(xm);
        double panel = h / 6.0 * (f0 + 4.0 * fm + f1);
        acc += simpson_rec(f, x0, x1, f0, fm, f1, panel, tol / panels, 48);
    }
    return acc;
}

double cross_product(double kappa, double ri, double ro) {
    return bessel_j1(kappa * ri) * bessel_y1(kappa * ro) -
           bessel_j1(kappa * ro) * bessel_y1(kappa * ri);
}

}  // namespace

std::vector<EigenMode> eigenvalues(const AnnulusFluid& fluid, int count) {
    fluid.validate();
    if (count < 1) throw ConfigError("eigenvalues: count must be at least 1");

    const double ri = fluid.inner_radius;
    const double ro = fluid.outer_radius;
    const double gap = fluid.gap();
    // Roots sit near n pi / gap and are asymptotically pi / gap apart, so a
    // scan step just under half that spacing cannot jump over one.
    const double scan_start = 0.5 * pi / gap;
    const double step = 0.45 * pi / gap;
    const long max_brackets = 16L * count + 64;

    std::vector<EigenMode> modes;
    modes.reserve(count);
    double lo = scan_start;
    double flo = cross_product(lo, ri, ro);
    long brackets = 0;
    while (static_cast<int>(modes.size()) < count) {
        if (++brackets > max_brackets)
            throw NumericalError("eigenvalues: root bracketing failed after scanning [" +
                                 std::to_string(scan_start) + ", " + std::to_string(lo) + "]");
        double hi = lo + step;
        double fhi = cross_product(hi, ri, ro);
        if (flo == 0.0 || flo * fhi < 0.0) {
            double a = lo, b = hi, fa = flo;
            while (b - a > 1e-15 * b) {
                double mid = 0.5 * (a + b);
                double fmid = cross_product(mid, ri, ro);
                if (fmid == 0.0) {
                    a = b = mid;
                    break;
                }
                if (fa * fmid < 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fmid;
                }
            }
            EigenMode mode;
            mode.index = static_cast<int>(modes.size()) + 1;
            mode.kappa = 0.5 * (a + b);
            mode.lambda = fluid.kinematic_viscosity * mode.kappa * mode.kappa;
            double y_inner = bessel_y1(mode.kappa * ri);
            if (std::abs(y_inner) < 1e-300)
                throw NumericalError("eigenvalues: degenerate normalization at mode " +
                                     std::to_string(mode.index));
            mode.mixing_ratio = -bessel_j1(mode.kappa * ri) / y_inner;
            modes.push_back(mode);
        }
        lo = hi;
        flo = fhi;
    }

    // Forcing projections. Moving-wall boundary values are absorbed with the
    // linear interpolant g(r) = R_i (R_o - r) / gap; the shifted field obeys
    // the clamped-wall diffusion with forcing
    //   -g(r) * stool_accel + nu L[g](r) * stool_rate,
    // and L[g] = -R_i R_o / (r^2 gap).
    for (EigenMode& mode : modes) {
        auto shape = [&](double r) { return mode_shape(mode, r); };
        auto weight_m = [&](double r) { return -ri * (ro - r) / gap * shape(r) * r; };
        auto weight_l = [&](double r) {
            return -fluid.kinematic_viscosity * ri * ro / (r * r * gap) * shape(r) * r;
        };
        auto weight_n = [&](double r) {
            double w = shape(r);
            return w * w * r;
        };
        // Scale-aware absolute tolerance: shapes are O(1), radii O(ro).
        double tol = 1e-12 * ro * ro * std::max(1.0, ri);
        double norm = integrate(weight_n, ri, ro, tol);
        mode.forcing_m = integrate(weight_m, ri, ro, tol) / norm;
        mode.forcing_l = integrate(weight_l, ri, ro, tol) / norm;
    }
    return modes;
}

double mode_shape(const EigenMode& mode, double r) {
    return bessel_j1(mode.kappa * r) + mode.mixing_ratio * bessel_y1(mode.kappa * r);
}

double transient_mode_amplitude(const EigenMode& mode, const std::vector<double>& times,
                                const std::vector<double>& rates, double time) {
    if (times.empty() || times.size() != rates.size())
        throw std::domain_error("transient_mode_amplitude: empty or mismatched rate history");
    if (time < times.front() || time > times.back())
        throw std::domain_error("transient_mode_amplitude: query time outside the history");

    const double lambda = mode.lambda;
    const double m = mode.forcing_m;
    const double l = mode.forcing_l;

    // T(t) = int_0^t exp(-lambda (t - s)) (m rate'(s) + l rate(s)) ds.
    // Integrating the rate'(s) term by parts removes the need to
    // differentiate the samples:
    //   T = m rate(t) - m rate(0) exp(-lambda (t - t0))
    //       + (l - m lambda) int exp(-lambda (t - s)) rate(s) ds.
    // The kernel is evaluated as exp(-lambda (t - s)) throughout, which only
    // ever underflows (never overflows) for large decay rates.
    size_t n = 0;
    while (n + 1 < times.size() && times[n + 1] <= time) ++n;
    double rate_t = rates[n];
    if (times[n] < time && n + 1 < times.size()) {
        double w = (time - times[n]) / (times[n + 1] - times[n]);
        rate_t = rates[n] + w * (rates[n + 1] - rates[n]);
    }

    double kernel_int = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double k0 = std::exp(-lambda * (time - times[i])) * rates[i];
        double k1 = std::exp(-lambda * (time - times[i + 1])) * rates[i + 1];
        kernel_int += 0.5 * (times[i + 1] - times[i]) * (k0 + k1);
    }
    if (times[n] < time) {
        double k0 = std::exp(-lambda * (time - times[n])) * rates[n];
        kernel_int += 0.5 * (time - times[n]) * (k0 + rate_t);
    }

    return m * rate_t - m * rates.front() * std::exp(-lambda * (time - times.front())) +
           (l - m * lambda) * kernel_int;
}

double linear_limit_profile(const AnnulusFluid& fluid, double stool_rate, double r) {
    fluid.validate();
    if (r < fluid.inner_radius || r > fluid.outer_radius)
        throw std::domain_error("linear_limit_profile: radius outside the annulus");
    return stool_rate * fluid.inner_radius * (fluid.outer_radius - r) / fluid.gap();
}

double effective_damping(const AnnulusFluid& fluid) {
    fluid.validate();
    return 2.0 * pi * fluid.density * fluid.kinematic_viscosity * fluid.outer_radius *
           fluid.inner_radius * fluid.inner_radius / fluid.gap();
}

double exact_annular_damping(const AnnulusFluid& fluid) {
    fluid.validate();
    double ri2 = fluid.inner_radius * fluid.inner_radius;
    double ro2 = fluid.outer_radius * fluid.outer_radius;
    return 4.0 * pi * fluid.density * fluid.kinematic_viscosity * ri2 * ro2 / (ro2 - ri2);
}

double boundedness_angle(const InertiaParams& inertias, double wheel_rate,
                         const AnnulusFluid& fluid) {
    inertias.validate();
    return std::abs(inertias.wheel_inertia * wheel_rate) / effective_damping(fluid);
}

}  // namespace dsr
