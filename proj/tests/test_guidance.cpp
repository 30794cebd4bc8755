#include "tolsim/guidance.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tolsim;
using doctest::Approx;

namespace {

constexpr double kStall = 4.392989945;

RampSpec takeoff_ramp() { return {{3.0, 3.0, 3.0, 3.0}, {}}; }

} // namespace

TEST_CASE("schedules are fixed multiples of stall speed") {
    const auto to = takeoff_schedule(kStall);
    REQUIRE(to.targets.size() == 5);
    CHECK(to.at(SpeedMark::V0) == 0.0);
    CHECK(to.at(SpeedMark::V1) == Approx(2.19649).epsilon(1e-5));
    CHECK(to.at(SpeedMark::VR) == Approx(4.83229).epsilon(1e-5));
    CHECK(to.at(SpeedMark::VLOF) == Approx(5.05194).epsilon(1e-5));
    CHECK(to.at(SpeedMark::V2) == Approx(5.27159).epsilon(1e-5));

    const auto ld = landing_schedule(kStall);
    CHECK(ld.maneuver == Maneuver::Landing);
    CHECK(ld.at(SpeedMark::VREF) == Approx(5.71089).epsilon(1e-5));
    CHECK(ld.at(SpeedMark::VTD) == Approx(1.1 * kStall));
    CHECK_THROWS_AS((void)ld.at(SpeedMark::V2), std::out_of_range);

    for (std::size_t i = 0; i + 1 < to.targets.size(); ++i) {
        CHECK(to.targets[i].speed < to.targets[i + 1].speed);
    }
}

TEST_CASE("desired pitch") {
    PitchProfileParams p;
    CHECK(desired_pitch(4.39, p) == Approx(0.2172250669).epsilon(1e-9));
    CHECK(desired_pitch(p.c, p) == p.theta_lim);
    CHECK(desired_pitch(p.c + 3.0, p) == Approx(desired_pitch(p.c - 3.0, p)).epsilon(1e-15));
    for (double v = -10.0; v < 40.0; v += 0.37) {
        CHECK(std::abs(desired_pitch(v, p)) <= p.theta_lim);
    }
    const PitchProfileParams nose_down{-0.15, 1.5, 11.0};
    CHECK(desired_pitch(1.5, nose_down) == -0.15);
}

TEST_CASE("reference speed ramps and holds") {
    const auto sched = takeoff_schedule(kStall);
    const auto ramp = takeoff_ramp();

    CHECK(reference_speed(0.0, sched, ramp).V == 0.0);
    CHECK(reference_speed(0.0, sched, ramp).dV == 0.0);
    CHECK(reference_speed(3.0, sched, ramp).V == Approx(sched.at(SpeedMark::V1)));
    CHECK(reference_speed(1.5, sched, ramp).V == Approx(0.5 * sched.at(SpeedMark::V1)));
    CHECK(reference_speed(12.0, sched, ramp).V == sched.at(SpeedMark::V2));
    CHECK(reference_speed(100.0, sched, ramp).dV == 0.0);

    double prev = -1.0;
    for (double t = 0.0; t < 15.0; t += 0.01) {
        const double v = reference_speed(t, sched, ramp).V;
        CHECK(v >= prev);
        prev = v;
    }

    const RampSpec held{{5.0, 5.0}, {38.0, 0.0}};
    const auto ld = landing_schedule(kStall);
    CHECK(reference_speed(0.0, ld, held).V == ld.at(SpeedMark::VREF));
    CHECK(reference_speed(20.0, ld, held).V == ld.at(SpeedMark::VTD));
    CHECK(reference_speed(20.0, ld, held).dV == 0.0);
    CHECK(reference_speed(45.5, ld, held).V == Approx(0.5 * ld.at(SpeedMark::VTD)));
    CHECK(reference_speed(60.0, ld, held).V == 0.0);
}

TEST_CASE("ramp spec validation") {
    const auto sched = takeoff_schedule(kStall);
    CHECK_THROWS_AS((void)reference_speed(0.0, sched, RampSpec{{3.0, 3.0}, {}}), ConfigError);
    CHECK_THROWS_AS((void)reference_speed(0.0, sched, RampSpec{{3.0, 0.0, 3.0, 3.0}, {}}),
                    ConfigError);
    CHECK_THROWS_AS((void)reference_speed(0.0, sched, RampSpec{{3.0, 3.0, 3.0, 3.0}, {1.0}}),
                    ConfigError);
    CHECK_THROWS_AS(
        (void)reference_speed(0.0, sched, RampSpec{{3.0, 3.0, 3.0, 3.0}, {1.0, -1.0, 0.0, 0.0}}),
        ConfigError);
}

TEST_CASE("analytic setpoint derivatives match central differences") {
    const auto sched = takeoff_schedule(kStall);
    const auto ramp = takeoff_ramp();
    const PitchProfileParams p;
    const double h = 1e-5;
    // Sample interior points of each segment only; the derivative jumps at the knots.
    for (double t = 0.2; t < 12.0; t += 0.5) {
        const auto sp = setpoint(t, sched, p, ramp);
        const auto lo = setpoint(t - h, sched, p, ramp);
        const auto hi = setpoint(t + h, sched, p, ramp);
        CHECK(sp.du_d == Approx((hi.u_d - lo.u_d) / (2.0 * h)).epsilon(1e-6));
        CHECK(sp.q_d == Approx((hi.theta_d - lo.theta_d) / (2.0 * h)).epsilon(1e-6).scale(1.0));
        CHECK(sp.dq_d == Approx((hi.q_d - lo.q_d) / (2.0 * h)).epsilon(1e-5).scale(1.0));
    }
}

TEST_CASE("phase machine") {
    const auto sched = takeoff_schedule(kStall);
    FlightState s;
    CHECK(advance_phase(Phase::Taxi, s, sched, -29.0) == Phase::Taxi);
    s.u = 3.0;
    CHECK(advance_phase(Phase::Taxi, s, sched, -29.0) == Phase::Acceleration);

    SUBCASE("liftoff waits for unloaded wheels") {
        s.u = 5.2;
        CHECK(advance_phase(Phase::Rotation, s, sched, -0.1) == Phase::Rotation);
        CHECK(advance_phase(Phase::Rotation, s, sched, 0.0) == Phase::Climb);
        // A large speed jump chains every transition.
        CHECK(advance_phase(Phase::Taxi, s, sched, 0.5) == Phase::Climb);
    }

    SUBCASE("landing sequence") {
        const auto ld = landing_schedule(kStall);
        FlightState a{6.0, 0.0, 0.0, 0.0, -30.0};
        CHECK(advance_phase(Phase::Approach, a, ld, 0.0) == Phase::Approach);
        a.u = 5.5;
        CHECK(advance_phase(Phase::Approach, a, ld, 0.0) == Phase::Flare);
        a.h = 0.0;
        CHECK(advance_phase(Phase::Flare, a, ld, -20.0) == Phase::Touchdown);
        a.u = 4.0;
        CHECK(advance_phase(Phase::Touchdown, a, ld, -20.0) == Phase::Ground);
        a.u = 0.0;
        CHECK(advance_phase(Phase::Ground, a, ld, -29.0) == Phase::Ground);
    }

    CHECK_THROWS_AS((void)advance_phase(Phase::Approach, s, sched, 0.0), ConfigError);
}

TEST_CASE("phase never regresses along random monotone speed traces") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> step(0.0, 0.2);
    const auto sched = takeoff_schedule(kStall);
    for (int trial = 0; trial < 50; ++trial) {
        FlightState s;
        Phase phase = Phase::Taxi;
        for (int k = 0; k < 60; ++k) {
            s.u += step(rng);
            const Phase next = advance_phase(phase, s, sched, k % 3 == 0 ? 0.0 : -1.0);
            CHECK(static_cast<int>(next) >= static_cast<int>(phase));
            phase = next;
        }
    }
}

TEST_CASE("phase names round-trip") {
    for (Phase p : {Phase::Taxi, Phase::Acceleration, Phase::Rotation, Phase::Climb,
                    Phase::Approach, Phase::Flare, Phase::Touchdown, Phase::Ground}) {
        CHECK(phase_from_string(to_string(p)) == p);
        CHECK(maneuver_of(p) == (static_cast<int>(p) <= 3 ? Maneuver::TakeOff : Maneuver::Landing));
    }
    CHECK_THROWS_AS((void)phase_from_string("Cruise"), std::invalid_argument);
    CHECK(initial_phase(Maneuver::Landing) == Phase::Approach);
    CHECK_FALSE(is_ground_phase(Phase::Flare));
    CHECK(is_ground_phase(Phase::Touchdown));
}
