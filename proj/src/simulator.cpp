#include "tolsim/simulator.hpp"

#include <cmath>
#include <string>

namespace tolsim {

namespace {

FlightState advance(const FlightState& s, const StateDerivative& d, double h) {
    FlightState out = s;
    out.u += h * d.du;
    out.w += h * d.dw;
    out.theta += h * d.dtheta;
    out.q += h * d.dq;
    out.h += h * d.dh;
    out.t += h;
    return out;
}

} // namespace

void ScenarioConfig::validate() const {
    params.validate();
    gains.validate();
    satp.validate();
    if (pitch_profile.d == 0.0 || !std::isfinite(pitch_profile.d) ||
        !std::isfinite(pitch_profile.theta_lim) || !std::isfinite(pitch_profile.c)) {
        throw ConfigError("pitch profile invariant violated: d != 0 and all values finite");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("sim invariant violated: dt > 0");
    }
    if (!(t_max > dt) || !std::isfinite(t_max)) {
        throw ConfigError("sim invariant violated: t_max > dt");
    }
    if (!initial.finite()) {
        throw ConfigError("initial state must be finite");
    }
    ramp.validate(schedule().targets.size() - 1);
}

SpeedSchedule ScenarioConfig::schedule() const {
    const double v_stall = stall_speed(params);
    return maneuver == Maneuver::TakeOff ? takeoff_schedule(v_stall) : landing_schedule(v_stall);
}

ControllerOptions ScenarioConfig::controller_options() const {
    return {contact_mode, scale, thrust_clamp};
}

FlightState rk4_step(const AircraftParams& params, const FlightState& state,
                     const ControlCommand& cmd, GroundContactMode mode, double dt) {
    const auto k1 = derivatives(params, state, cmd, mode);
    const auto k2 = derivatives(params, advance(state, k1, 0.5 * dt), cmd, mode);
    const auto k3 = derivatives(params, advance(state, k2, 0.5 * dt), cmd, mode);
    const auto k4 = derivatives(params, advance(state, k3, dt), cmd, mode);

    const double w6 = dt / 6.0;
    FlightState out = state;
    out.u += w6 * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
    out.w += w6 * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);
    out.theta += w6 * (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta);
    out.q += w6 * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq);
    out.h += w6 * (k1.dh + 2.0 * k2.dh + 2.0 * k3.dh + k4.dh);
    out.t += dt;
    if (!out.finite()) {
        throw DynamicsError("RK4 step produced a non-finite state at t = " + std::to_string(out.t));
    }
    return out;
}

FlightState apply_runway_constraint(const AircraftParams& params, const FlightState& state,
                                    double T) {
    if (state.h < 0.0) {
        return state;
    }
    FlightState out = state;
    out.h = 0.0;
    const double sinking = -out.u * std::sin(out.theta) + out.w * std::cos(out.theta);
    if (wheel_load(params, out, T) < 0.0 || sinking > 0.0) {
        out.w = out.u * std::tan(out.theta);
    }
    return out;
}

std::vector<SimRecord> run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const auto schedule = cfg.schedule();
    const auto options = cfg.controller_options();
    const auto lyap_gains = monitor_gains(cfg.params, cfg.gains, cfg.scale);

    const auto steps = static_cast<std::size_t>(std::llround(cfg.t_max / cfg.dt));
    std::vector<SimRecord> records;
    records.reserve(steps);

    const double t0 = cfg.initial.t;
    FlightState state = cfg.initial;
    Phase phase = initial_phase(cfg.maneuver);

    for (std::size_t k = 0; k < steps; ++k) {
        const double elapsed = static_cast<double>(k) * cfg.dt;
        state.t = t0 + elapsed;

        SimRecord rec;
        try {
            rec.t = state.t;
            rec.state = state;
            rec.setpoint = setpoint(elapsed, schedule, cfg.pitch_profile, cfg.ramp);
            rec.cmd = control_command(state, rec.setpoint, cfg.params, cfg.gains, cfg.satp, options);
            rec.N = wheel_load(cfg.params, state, rec.cmd.T);
            rec.F_mu = effective_friction(rec.N, cfg.params.mu);
            phase = advance_phase(phase, state, schedule, rec.N);
            rec.phase = phase;
            rec.errors = tracking_errors(state, rec.setpoint);
            rec.lyap = lyapunov_sample(rec.errors, lyap_gains, cfg.satp);
            rec.V = airspeed(state);
        } catch (const std::exception& e) {
            throw SimulationError("step " + std::to_string(k) + ": " + e.what(), std::move(records));
        }
        records.push_back(rec);

        if (cfg.maneuver == Maneuver::Landing && phase == Phase::Ground &&
            state.u <= kStopSpeed) {
            break;
        }
        if (k + 1 == steps) {
            break;
        }
        try {
            state = rk4_step(cfg.params, state, rec.cmd, cfg.contact_mode, cfg.dt);
            state = apply_runway_constraint(cfg.params, state, rec.cmd.T);
        } catch (const std::exception& e) {
            throw SimulationError("integration blow-up at step " + std::to_string(k) + ": " +
                                      e.what(),
                                  std::move(records));
        }
    }
    return records;
}

std::string_view to_string(EventKind kind) {
    switch (kind) {
    case EventKind::Liftoff:
        return "liftoff";
    case EventKind::Touchdown:
        return "touchdown";
    case EventKind::Stop:
        return "stop";
    }
    return "unknown";
}

std::vector<Event> detect_events(const std::vector<SimRecord>& records) {
    std::vector<Event> events;
    bool liftoff = false;
    bool touchdown = false;
    bool stop = false;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (i > 0) {
            const auto& prev = records[i - 1];
            if (!liftoff && is_ground_phase(prev.phase) && prev.N < 0.0 && rec.N >= 0.0) {
                events.push_back({EventKind::Liftoff, rec.t});
                liftoff = true;
            }
            if (!touchdown && !is_ground_phase(prev.phase) && prev.state.h < 0.0 &&
                rec.state.h >= 0.0) {
                events.push_back({EventKind::Touchdown, rec.t});
                touchdown = true;
            }
        }
        if (!stop && rec.phase == Phase::Ground && rec.state.u <= kStopSpeed) {
            events.push_back({EventKind::Stop, rec.t});
            stop = true;
        }
    }
    return events;
}

} // namespace tolsim
