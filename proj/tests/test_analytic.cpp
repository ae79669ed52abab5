#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dsr/analytic.hpp"
#include "dsr/bessel.hpp"

using namespace dsr;

namespace {

const AnnulusFluid kWideFilm{3.0, 0.05, 1.0, 2.0};

// Frozen roots of the cross product for R_i = 1, R_o = 2 (30-digit
// bisection, rounded to the nearest double).
constexpr double kKappa[6] = {3.196578380810635,  6.3123495103732631, 9.4444649254822728,
                              12.581202810104108, 15.719854269429739, 18.859476620138393};

double trapezoid_overlap(const EigenMode& a, const EigenMode& b, const AnnulusFluid& fluid) {
    const int n = 4000;
    double h = fluid.gap() / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        double r = fluid.inner_radius + i * h;
        double w = (i == 0 || i == n) ? 0.5 : 1.0;
        sum += w * mode_shape(a, r) * mode_shape(b, r) * r;
    }
    return sum * h;
}

}  // namespace

TEST_SUITE("analytic") {

TEST_CASE("eigenvalue roots match the frozen references") {
    auto modes = eigenvalues(kWideFilm, 6);
    REQUIRE(modes.size() == 6);
    for (int n = 0; n < 6; ++n) {
        CHECK(modes[n].index == n + 1);
        CHECK(std::abs(modes[n].kappa - kKappa[n]) <= 1e-12 * kKappa[n]);
        CHECK(modes[n].lambda ==
              doctest::Approx(0.05 * kKappa[n] * kKappa[n]).epsilon(1e-13));
    }
    for (int n = 1; n < 6; ++n) CHECK(modes[n].kappa > modes[n - 1].kappa);
}

TEST_CASE("roots really are roots of the cross product") {
    auto modes = eigenvalues(kWideFilm, 4);
    for (const EigenMode& m : modes) {
        double ri = kWideFilm.inner_radius, ro = kWideFilm.outer_radius;
        double residual = bessel_j1(m.kappa * ri) * bessel_y1(m.kappa * ro) -
                          bessel_j1(m.kappa * ro) * bessel_y1(m.kappa * ri);
        CHECK(std::abs(residual) < 1e-10);
    }
}

TEST_CASE("first mixing ratio matches the frozen reference") {
    auto modes = eigenvalues(kWideFilm, 1);
    CHECK(std::abs(modes[0].mixing_ratio - -0.70994244144491507) <= 1e-10 * 0.70994244144491507);
}

TEST_CASE("mode shapes vanish at the walls") {
    auto modes = eigenvalues(kWideFilm, 4);
    for (const EigenMode& m : modes) {
        double peak = 0.0;
        for (int i = 1; i < 64; ++i) {
            double r = kWideFilm.inner_radius + kWideFilm.gap() * i / 64.0;
            peak = std::max(peak, std::abs(mode_shape(m, r)));
        }
        CHECK(std::abs(mode_shape(m, kWideFilm.inner_radius)) <= 1e-8 * peak);
        CHECK(std::abs(mode_shape(m, kWideFilm.outer_radius)) <= 1e-8 * peak);
    }
}

TEST_CASE("modes are orthogonal under the radial weight") {
    auto modes = eigenvalues(kWideFilm, 3);
    double norm1 = trapezoid_overlap(modes[0], modes[0], kWideFilm);
    CHECK(std::abs(trapezoid_overlap(modes[0], modes[1], kWideFilm)) < 1e-6 * norm1);
    CHECK(std::abs(trapezoid_overlap(modes[0], modes[2], kWideFilm)) < 1e-6 * norm1);
}

TEST_CASE("forcing projections match the frozen references") {
    // frozen at unit viscosity; the rate projection scales with nu, the
    // acceleration projection does not
    AnnulusFluid unit = kWideFilm;
    unit.kinematic_viscosity = 1.0;
    auto modes = eigenvalues(unit, 1);
    CHECK(modes[0].forcing_m == doctest::Approx(1.3634067642787013).epsilon(1e-8));
    CHECK(modes[0].forcing_l == doctest::Approx(2.6170562526174439).epsilon(1e-8));

    auto scaled = eigenvalues(kWideFilm, 1);
    CHECK(scaled[0].forcing_m == doctest::Approx(modes[0].forcing_m).epsilon(1e-10));
    CHECK(scaled[0].forcing_l == doctest::Approx(0.05 * modes[0].forcing_l).epsilon(1e-10));
}

TEST_CASE("transient amplitude matches the closed form for exponential forcing") {
    auto modes = eigenvalues(kWideFilm, 1);
    const EigenMode& mode = modes[0];
    const double alpha = 0.3;
    const int n = 10000;
    std::vector<double> times(n + 1), rates(n + 1);
    for (int i = 0; i <= n; ++i) {
        times[i] = 10.0 * i / n;
        rates[i] = std::exp(-alpha * times[i]);
    }
    for (double t : {2.0, 5.0, 10.0}) {
        double expected = (mode.forcing_l - mode.forcing_m * alpha) /
                          (mode.lambda - alpha) *
                          (std::exp(-alpha * t) - std::exp(-mode.lambda * t));
        double got = transient_mode_amplitude(mode, times, rates, t);
        CHECK(std::abs(got - expected) <= 1e-6 * std::abs(expected));
    }
}

TEST_CASE("transient amplitude rejects bad histories") {
    auto modes = eigenvalues(kWideFilm, 1);
    std::vector<double> times{0.0, 1.0}, rates{1.0, 0.5};
    CHECK_THROWS_AS(transient_mode_amplitude(modes[0], {}, {}, 0.0), std::domain_error);
    CHECK_THROWS_AS(transient_mode_amplitude(modes[0], times, {0.0}, 0.5), std::domain_error);
    CHECK_THROWS_AS(transient_mode_amplitude(modes[0], times, rates, 2.0), std::domain_error);
}

TEST_CASE("linear profile interpolates between the walls") {
    CHECK(linear_limit_profile(kWideFilm, 0.8, 1.0) == doctest::Approx(0.8));
    CHECK(linear_limit_profile(kWideFilm, 0.8, 2.0) == doctest::Approx(0.0));
    CHECK(linear_limit_profile(kWideFilm, 0.8, 1.5) == doctest::Approx(0.4));
    CHECK_THROWS_AS(linear_limit_profile(kWideFilm, 0.8, 0.99), std::domain_error);
    CHECK_THROWS_AS(linear_limit_profile(kWideFilm, 0.8, 2.01), std::domain_error);
}

TEST_CASE("damping constants and their exact relative gap") {
    for (const AnnulusFluid& f :
         {kWideFilm, AnnulusFluid{1014.7, 1.17e-6, 0.135, 0.1351},
          AnnulusFluid{1000.0, 1e-6, 0.27, 0.4}}) {
        double keff = effective_damping(f);
        double kexact = exact_annular_damping(f);
        double direct = 2.0 * std::numbers::pi * f.density * f.kinematic_viscosity *
                        f.outer_radius * f.inner_radius * f.inner_radius / f.gap();
        CHECK(keff == doctest::Approx(direct).epsilon(1e-14));
        double ratio = (f.outer_radius - f.inner_radius) / (f.outer_radius + f.inner_radius);
        CHECK(kexact / keff - 1.0 == doctest::Approx(ratio).epsilon(1e-12));
        CHECK(kexact < keff * 2.0);
        CHECK(kexact > keff);
    }
    // doubling the radius makes the exact constant 4/3 of the quasi-static one
    AnnulusFluid doubled{1.0, 1.0, 1.0, 2.0};
    CHECK(exact_annular_damping(doubled) / effective_damping(doubled) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("film constant for the reference bearing") {
    AnnulusFluid film{1014.7, 1.17e-6, 0.135, 0.1351};
    CHECK(effective_damping(film) == doctest::Approx(0.18367).epsilon(1e-3));
}

TEST_CASE("quasi-static deflection magnitudes for two validation films") {
    InertiaParams inertias{6e-3, 1.96};
    double rate = 60.0 * std::numbers::pi;
    CHECK(boundedness_angle(inertias, rate, AnnulusFluid{1014.7, 1.17e-6, 0.135, 0.14}) ==
          doctest::Approx(297.1).epsilon(1e-3));
    CHECK(boundedness_angle(inertias, rate, AnnulusFluid{1014.7, 1.17e-6, 0.27, 0.28}) ==
          doctest::Approx(74.28).epsilon(1e-3));
    CHECK(boundedness_angle(inertias, -rate, AnnulusFluid{1014.7, 1.17e-6, 0.27, 0.28}) ==
          doctest::Approx(74.28).epsilon(1e-3));
}

TEST_CASE("narrowest gap behaves like a straight channel") {
    AnnulusFluid film{1014.7, 1.17e-6, 0.135, 0.1351};
    auto modes = eigenvalues(film, 1);
    CHECK(std::abs(modes[0].kappa * film.gap() / std::numbers::pi - 1.0) < 1e-6);
}

}  // TEST_SUITE
