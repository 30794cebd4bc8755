#include "tolsim/config.hpp"
#include "tolsim/simulator.hpp"

#include <doctest.h>

#include <cmath>

using namespace tolsim;
using doctest::Approx;

namespace {

const std::vector<SimRecord>& takeoff_run() {
    static const auto records = run_scenario(takeoff_preset());
    return records;
}

const std::vector<SimRecord>& landing_run() {
    static const auto records = run_scenario(landing_preset());
    return records;
}

const Event* find_event(const std::vector<Event>& events, EventKind kind) {
    for (const auto& e : events) {
        if (e.kind == kind) {
            return &e;
        }
    }
    return nullptr;
}

} // namespace

TEST_CASE("rk4 matches a closed-form solution") {
    // Airborne and nose level with no aero and no gravity: q grows linearly
    // under constant tau, theta quadratically. RK4 is exact for polynomials of
    // this degree.
    AircraftParams p;
    p.rho = 1e-300;
    p.g = 1e-300;
    FlightState s{0.0, 0.0, 0.0, 0.0, -100.0};
    const ControlCommand cmd{0.0, 0.5};
    for (int k = 0; k < 100; ++k) {
        s = rk4_step(p, s, cmd, GroundContactMode::SignedLoad, 0.01);
    }
    CHECK(s.q == Approx(0.5).epsilon(1e-12));
    CHECK(s.theta == Approx(0.25).epsilon(1e-12));
    CHECK(s.t == Approx(1.0));
}

TEST_CASE("step halving changes the state by less than 1e-4") {
    const AircraftParams p;
    const ControlCommand cmd{6.0, 0.1};
    FlightState coarse{5.27, 0.46, 0.2148, 0.05, -50.0};
    FlightState fine = coarse;
    const double dt = 1e-3;
    for (int k = 0; k < 1000; ++k) {
        coarse = rk4_step(p, coarse, cmd, GroundContactMode::SignedLoad, dt);
        fine = rk4_step(p, fine, cmd, GroundContactMode::SignedLoad, dt / 2);
        fine = rk4_step(p, fine, cmd, GroundContactMode::SignedLoad, dt / 2);
    }
    CHECK(std::abs(coarse.u - fine.u) < 1e-4);
    CHECK(std::abs(coarse.w - fine.w) < 1e-4);
    CHECK(std::abs(coarse.theta - fine.theta) < 1e-4);
    CHECK(std::abs(coarse.q - fine.q) < 1e-4);
    CHECK(std::abs(coarse.h - fine.h) < 1e-4);
}

TEST_CASE("runway constraint") {
    const AircraftParams p;
    FlightState below{3.0, 0.5, 0.1, 0.0, 0.02};
    const auto fixed = apply_runway_constraint(p, below, 0.0);
    CHECK(fixed.h == 0.0);
    CHECK(fixed.w == Approx(3.0 * std::tan(0.1)));

    FlightState air{3.0, 0.5, 0.1, 0.0, -1.0};
    const auto untouched = apply_runway_constraint(p, air, 0.0);
    CHECK(untouched.w == air.w);
    CHECK(untouched.h == air.h);
}

TEST_CASE("two-step run") {
    auto cfg = takeoff_preset();
    cfg.t_max = 2.0 * cfg.dt;
    const auto recs = run_scenario(cfg);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].t == 0.0);
    CHECK(recs[1].t == Approx(cfg.dt));
    CHECK(recs[0].phase == Phase::Taxi);
    CHECK(recs[0].state.h == 0.0);
}

TEST_CASE("invalid configurations are rejected before integration") {
    auto cfg = takeoff_preset();
    cfg.dt = 0.0;
    CHECK_THROWS_AS((void)run_scenario(cfg), ConfigError);
    cfg = takeoff_preset();
    cfg.gains.k_q = 0.0;
    CHECK_THROWS_AS((void)run_scenario(cfg), std::invalid_argument);
    cfg = takeoff_preset();
    cfg.ramp.ramp.pop_back();
    CHECK_THROWS_AS((void)run_scenario(cfg), ConfigError);
}

TEST_CASE("blow-up keeps the partial trajectory") {
    auto cfg = takeoff_preset();
    cfg.dt = 0.5;
    cfg.t_max = 200.0;
    cfg.gains.k_theta = 1e6;
    cfg.gains.k_q = 1e6;
    bool threw = false;
    try {
        (void)run_scenario(cfg);
    } catch (const SimulationError& e) {
        threw = true;
        CHECK_FALSE(e.records.empty());
    }
    CHECK(threw);
}

TEST_CASE("takeoff preset") {
    const auto& recs = takeoff_run();
    REQUIRE_FALSE(recs.empty());
    CHECK(recs.size() == 30000);
    CHECK(recs.back().phase == Phase::Climb);
    CHECK(recs.back().state.h < -5.0);

    const auto events = detect_events(recs);
    const auto* liftoff = find_event(events, EventKind::Liftoff);
    REQUIRE(liftoff != nullptr);
    CHECK(liftoff->t == Approx(5.039).epsilon(0.002));

    const auto& err = recs.back().errors;
    CHECK(std::abs(err.e1) < 1e-6);
    CHECK(std::abs(err.e2) < 1e-6);
    CHECK(std::abs(err.e3) < 1e-6);
}

TEST_CASE("landing preset") {
    const auto& recs = landing_run();
    REQUIRE_FALSE(recs.empty());
    CHECK(recs.back().phase == Phase::Ground);
    CHECK(recs.back().state.u <= kStopSpeed);
    CHECK(recs.back().t < 60.0);

    const auto events = detect_events(recs);
    const auto* touchdown = find_event(events, EventKind::Touchdown);
    const auto* stop = find_event(events, EventKind::Stop);
    REQUIRE(touchdown != nullptr);
    REQUIRE(stop != nullptr);
    CHECK(touchdown->t == Approx(39.98).epsilon(0.005));
    CHECK(stop->t > touchdown->t);
    CHECK(find_event(events, EventKind::Liftoff) == nullptr);
}

TEST_CASE("trajectory invariants") {
    for (const auto* recs : {&takeoff_run(), &landing_run()}) {
        const double dt = 1e-3;
        const double mu = AircraftParams{}.mu;
        for (std::size_t i = 0; i < recs->size(); ++i) {
            const auto& r = (*recs)[i];
            CHECK(r.state.h <= 0.0);
            if (r.state.h < 0.0) {
                CHECK(r.N == 0.0);
            }
            CHECK(r.F_mu == (r.N < 0.0 ? mu : 0.0));
            if (i > 0) {
                const auto& prev = (*recs)[i - 1];
                CHECK(static_cast<int>(r.phase) >= static_cast<int>(prev.phase));
                const double rate = (r.state.theta - prev.state.theta) / dt;
                CHECK(rate == Approx(0.5 * (r.state.q + prev.state.q)).epsilon(1e-6).scale(1.0));
            }
        }
    }
}

TEST_CASE("runs are deterministic") {
    auto cfg = takeoff_preset();
    cfg.t_max = 2.0;
    const auto a = run_scenario(cfg);
    const auto b = run_scenario(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].state.u == b[i].state.u);
        CHECK(a[i].state.theta == b[i].state.theta);
        CHECK(a[i].cmd.T == b[i].cmd.T);
    }
}

TEST_CASE("opposing-motion contact also leaves the runway") {
    auto cfg = takeoff_preset();
    cfg.contact_mode = GroundContactMode::OpposingMotion;
    const auto recs = run_scenario(cfg);
    CHECK(recs.back().phase == Phase::Climb);
}
