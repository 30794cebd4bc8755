#include "tolsim/dynamics.hpp"

#include <cmath>

namespace tolsim {

namespace {

void check_term(double value, const char* term) {
    if (!std::isfinite(value)) {
        throw DynamicsError(std::string("non-finite term in equations of motion: ") + term);
    }
}

} // namespace

AeroSnapshot aero_snapshot(const AircraftParams& params, const FlightState& state) {
    AeroSnapshot snap;
    snap.V = airspeed(state);
    snap.alpha = angle_of_attack(state);
    const auto forces = lift_drag(params, snap.V, snap.alpha);
    snap.lift = forces.lift;
    snap.drag = forces.drag;
    const double gamma = state.theta - snap.alpha;
    snap.support = snap.lift * std::cos(gamma) - snap.drag * std::sin(gamma) - params.m * params.g;
    snap.on_runway = on_runway(state);
    return snap;
}

double normal_force(const AircraftParams& params, const FlightState& state, double T, double L,
                    double D, double alpha) {
    const double gamma = state.theta - alpha;
    return L * std::cos(gamma) - D * std::sin(gamma) + T * std::sin(state.theta) -
           params.m * params.g;
}

double wheel_load(const AircraftParams& params, const FlightState& state, double T) {
    if (!on_runway(state)) {
        return 0.0;
    }
    const auto snap = aero_snapshot(params, state);
    return snap.support + T * std::sin(state.theta);
}

StateDerivative derivatives(const AircraftParams& params, const FlightState& state,
                            const ControlCommand& cmd, GroundContactMode mode) {
    const auto snap = aero_snapshot(params, state);
    check_term(snap.lift, "lift");
    check_term(snap.drag, "drag");

    const double sin_t = std::sin(state.theta);
    const double cos_t = std::cos(state.theta);
    const double sin_a = std::sin(snap.alpha);
    const double cos_a = std::cos(snap.alpha);
    const double m = params.m;

    const double N = snap.on_runway ? snap.support + cmd.T * sin_t : 0.0;
    const double f_mu = effective_friction(N, params.mu);
    check_term(N, "normal force");

    // In-plane driving force along body x, excluding friction.
    const double drive =
        m * (-state.q * state.w - params.g * sin_t) + snap.lift * sin_a - snap.drag * cos_a + cmd.T;
    check_term(drive, "longitudinal force");

    double friction = 0.0;
    if (mode == GroundContactMode::SignedLoad) {
        friction = -f_mu * N;
    } else {
        const double capacity = f_mu * std::abs(N);
        if (state.u > 0.0) {
            friction = -capacity;
        } else if (state.u < 0.0) {
            friction = capacity;
        } else {
            friction = std::abs(drive) <= capacity ? -drive : -std::copysign(capacity, drive);
        }
    }

    StateDerivative d;
    d.du = (drive + friction) / m;
    d.dw = state.q * state.u + params.g * cos_t + (-snap.drag * sin_a - snap.lift * cos_a) / m;
    d.dtheta = state.q;
    d.dq = cmd.tau;
    d.dh = -state.u * sin_t + state.w * cos_t;

    check_term(d.du, "du");
    check_term(d.dw, "dw");
    check_term(d.dq, "dq (tau)");
    check_term(d.dh, "dh");
    return d;
}

const char* to_string(GroundContactMode mode) {
    return mode == GroundContactMode::SignedLoad ? "signed_load" : "opposing_motion";
}

} // namespace tolsim
