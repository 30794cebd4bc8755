#include "tolsim/dynamics.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace tolsim;
using doctest::Approx;

TEST_CASE("normal force") {
    AircraftParams p;
    CHECK(normal_force(p, {}, 0.0, 0.0, 0.0, 0.0) == Approx(-29.43));

    FlightState level;
    level.theta = 0.07;
    CHECK(normal_force(p, level, 0.0, p.m * p.g, 0.0, 0.07) == Approx(0.0).epsilon(1e-12));

    FlightState s;
    s.theta = 0.1;
    CHECK(normal_force(p, s, 10.0, 20.0, 2.0, 0.05) == Approx(-8.556618964173747).epsilon(1e-12));
}

TEST_CASE("effective friction switch") {
    CHECK(effective_friction(-29.43, 0.02) == 0.02);
    CHECK(effective_friction(0.0, 0.02) == 0.0);
    CHECK(effective_friction(5.0, 0.02) == 0.0);
}

TEST_CASE("wheel load is zero in the air") {
    AircraftParams p;
    FlightState s;
    s.h = -5.0;
    CHECK(wheel_load(p, s, 0.0) == 0.0);
    s.h = 0.0;
    CHECK(wheel_load(p, s, 0.0) == Approx(-p.m * p.g));
}

TEST_CASE("parked aircraft") {
    AircraftParams p;
    const FlightState parked{};

    const auto literal = derivatives(p, parked, {}, GroundContactMode::SignedLoad);
    CHECK(literal.dw == Approx(9.81));
    CHECK(literal.dtheta == 0.0);
    CHECK(literal.dq == 0.0);
    CHECK(literal.dh == 0.0);
    // -mu * N with N = -m g: this sign convention makes friction propulsive.
    CHECK(literal.du == Approx(p.mu * p.g));
    CHECK(literal.du == Approx(0.1962));

    const auto opposing = derivatives(p, parked, {}, GroundContactMode::OpposingMotion);
    CHECK(opposing.du == 0.0);
}

TEST_CASE("opposing-motion friction retards rolling") {
    AircraftParams p;
    FlightState rolling;
    rolling.u = 2.0;
    const auto literal = derivatives(p, rolling, {}, GroundContactMode::SignedLoad);
    const auto opposing = derivatives(p, rolling, {}, GroundContactMode::OpposingMotion);
    const double N = wheel_load(p, rolling, 0.0);
    REQUIRE(N < 0.0);
    CHECK(literal.du - opposing.du == Approx(2.0 * p.mu * std::abs(N) / p.m).epsilon(1e-12));

    // Static band breaks once the drive exceeds mu |N|.
    FlightState parked{};
    const auto pushed = derivatives(p, parked, {5.0, 0.0}, GroundContactMode::OpposingMotion);
    CHECK(pushed.du == Approx((5.0 - p.mu * p.m * p.g) / p.m));
}

TEST_CASE("structural identities") {
    AircraftParams p;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        FlightState s{5.0 + 3.0 * U(rng), 0.8 * U(rng), 0.3 * U(rng), 0.4 * U(rng),
                      i % 2 == 0 ? 0.0 : -10.0};
        const ControlCommand cmd{5.0 + 5.0 * U(rng), U(rng)};
        for (auto mode : {GroundContactMode::SignedLoad, GroundContactMode::OpposingMotion}) {
            const auto d = derivatives(p, s, cmd, mode);
            CHECK(d.dtheta == s.q);
            CHECK(d.dq == cmd.tau);

            // Thrust never enters the w-equation.
            const auto d2 = derivatives(p, s, {cmd.T + 7.0, cmd.tau}, mode);
            CHECK(d2.dw == d.dw);

            // Friction vanishes whenever the wheels are unloaded.
            if (wheel_load(p, s, cmd.T) >= 0.0) {
                AircraftParams frictionless = p;
                frictionless.mu = 0.0;
                const auto d0 = derivatives(frictionless, s, cmd, mode);
                CHECK(d0.du == d.du);
                CHECK(d0.dw == d.dw);
            }
        }
    }
}

TEST_CASE("finite-difference Jacobian away from the switching surface") {
    AircraftParams p;
    const FlightState s{5.0, 0.4, 0.12, 0.05, -20.0};
    const ControlCommand cmd{6.0, 0.1};
    const auto base = derivatives(p, s, cmd, GroundContactMode::SignedLoad);
    // Perturb u; compare forward differences at two step sizes: O(eps) agreement.
    auto du_du = [&](double eps) {
        FlightState t = s;
        t.u += eps;
        return (derivatives(p, t, cmd, GroundContactMode::SignedLoad).du - base.du) / eps;
    };
    const double coarse = du_du(1e-4);
    const double fine = du_du(1e-5);
    CHECK(std::abs(coarse - fine) < 1e-3);
    // And in w, for dw.
    auto dw_dw = [&](double eps) {
        FlightState t = s;
        t.w += eps;
        return (derivatives(p, t, cmd, GroundContactMode::SignedLoad).dw - base.dw) / eps;
    };
    CHECK(std::abs(dw_dw(1e-4) - dw_dw(1e-5)) < 1e-3);
    CHECK(dw_dw(1e-5) < 0.0);
}

TEST_CASE("non-finite input names the term") {
    AircraftParams p;
    FlightState s;
    s.u = 3.0;
    s.h = -1.0;
    const ControlCommand bad{0.0, std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_WITH_AS((void)derivatives(p, s, bad, GroundContactMode::SignedLoad),
                         doctest::Contains("tau"), DynamicsError);
}
