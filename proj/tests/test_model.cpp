#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "dsr/damping.hpp"
#include "dsr/errors.hpp"
#include "dsr/model.hpp"

using namespace dsr;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("model") {

TEST_CASE("ramp position and rate") {
    RampProfile ramp{2.0, 5.0};
    CHECK(ramp_position(ramp, 0.0) == 0.0);
    CHECK(ramp_position(ramp, 3.0) == doctest::Approx(6.0));
    CHECK(ramp_position(ramp, 5.0) == doctest::Approx(10.0));
    CHECK(ramp_position(ramp, 50.0) == doctest::Approx(10.0));
    CHECK(ramp_rate(ramp, 3.0) == 2.0);
    CHECK(ramp_rate(ramp, 6.0) == 0.0);
    CHECK_THROWS_AS(ramp_position(ramp, -0.1), std::domain_error);
    CHECK_THROWS_AS(ramp_rate(ramp, -0.1), std::domain_error);
}

TEST_CASE("constant law normalization") {
    // scale 2 pi c gives a raw coefficient of c everywhere
    DampingLaw law = DampingLaw::constant(2.0 * kPi * 0.7);
    CHECK(damping_coefficient(law, 0.0) == doctest::Approx(0.7));
    CHECK(damping_coefficient(law, -12.3) == doctest::Approx(0.7));
    CHECK(damping_potential(law, 2.0) == doctest::Approx(1.4));
    CHECK(damping_potential(law, -2.0) == doctest::Approx(-1.4));
}

TEST_CASE("built-in law values at landmarks") {
    DampingLaw raised = DampingLaw::raised_cosine(1.0);
    CHECK(damping_coefficient(raised, 0.0) == doctest::Approx(1.0 / kPi));
    CHECK(damping_coefficient(raised, kPi) == doctest::Approx(0.0));
    DampingLaw squared = DampingLaw::cosine_squared(1.0);
    CHECK(damping_coefficient(squared, 0.0) == doctest::Approx(2.0 / kPi));
    CHECK(damping_coefficient(squared, kPi / 2.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("potential is the antiderivative of the coefficient") {
    DampingLaw laws[] = {
        DampingLaw::constant(1.3),
        DampingLaw::raised_cosine(0.8),
        DampingLaw::cosine_squared(2.1),
        DampingLaw::tabulated({{-1.0, 0.5}, {0.0, 1.0}, {1.5, 2.0}, {3.0, 0.25}}),
    };
    const double h = 1e-5;
    for (const DampingLaw& law : laws) {
        for (double angle : {-2.3, -0.4, 0.0, 0.7, 2.9}) {
            double fd = (damping_potential(law, angle + h) - damping_potential(law, angle - h)) /
                        (2.0 * h);
            CHECK(std::abs(fd - damping_coefficient(law, angle)) < 1e-6);
        }
    }
}

TEST_CASE("tabulated interpolation, clamping and exact integral") {
    DampingLaw law = DampingLaw::tabulated({{0.0, 1.0}, {1.0, 2.0}, {2.0, 0.5}});
    CHECK(damping_coefficient(law, 0.5) == doctest::Approx(1.5));
    CHECK(damping_coefficient(law, -3.0) == doctest::Approx(1.0));  // clamp below
    CHECK(damping_coefficient(law, 9.0) == doctest::Approx(0.5));   // clamp above
    // trapezoids on the breakpoints are exact for the linear interpolant
    CHECK(damping_potential(law, 1.5) == doctest::Approx(1.5 + 0.25 * (2.0 + 1.25)));
    CHECK(damping_potential(law, -0.5) == doctest::Approx(-0.5));
}

TEST_CASE("law validation rejects bad shapes") {
    CHECK_THROWS_AS(DampingLaw::constant(-1.0).validate(), ConfigError);
    CHECK_THROWS_AS(DampingLaw::tabulated({{0.0, 1.0}}).validate(), ConfigError);
    CHECK_THROWS_AS(DampingLaw::tabulated({{1.0, 1.0}, {0.0, 1.0}}).validate(), ConfigError);
    CHECK_THROWS_AS(DampingLaw::tabulated({{0.0, 1.0}, {1.0, -0.1}}).validate(), ConfigError);
    CHECK_NOTHROW(DampingLaw::none().validate());
}

TEST_CASE("momentum combines rates and the damping potential") {
    InertiaParams inertias{0.0625, 0.625};
    DampingLaw law = DampingLaw::constant(2.0 * kPi);  // raw coefficient 1
    RigidState state;
    state.wheel_rate = 2.0;
    state.stool_rate = -0.2;
    state.stool_angle = 0.3;
    double j = damping_induced_momentum(state, inertias, law);
    CHECK(j == doctest::Approx(0.6875 * -0.2 + 0.0625 * 2.0 + 0.3));
}

TEST_CASE("parameter validation names the broken rule") {
    CHECK_THROWS_AS(InertiaParams{}.validate(), ConfigError);
    CHECK_THROWS_AS((AnnulusFluid{1000.0, 1e-6, 0.2, 0.1}).validate(), ConfigError);
    CHECK_THROWS_AS((RampProfile{1.0, -1.0}).validate(), ConfigError);
    CHECK_THROWS_AS((PDGains{-1.0, 1.0}).validate(), ConfigError);
    CHECK_THROWS_AS((BearingGeometry{0.05, 0.01, 0.0}).validate(), ConfigError);
    CHECK_NOTHROW((AnnulusFluid{1000.0, 1e-6, 0.1, 0.2}).validate());
}

}  // TEST_SUITE
