#include "tolsim/guidance.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

namespace tolsim {

namespace {

constexpr std::array<std::pair<Phase, std::string_view>, 8> kPhaseNames{{
    {Phase::Taxi, "Taxi"},
    {Phase::Acceleration, "Acceleration"},
    {Phase::Rotation, "Rotation"},
    {Phase::Climb, "Climb"},
    {Phase::Approach, "Approach"},
    {Phase::Flare, "Flare"},
    {Phase::Touchdown, "Touchdown"},
    {Phase::Ground, "Ground"},
}};

double hold_of(const RampSpec& ramp, std::size_t i) {
    return ramp.hold.empty() ? 0.0 : ramp.hold[i];
}

} // namespace

Maneuver maneuver_of(Phase phase) {
    switch (phase) {
    case Phase::Taxi:
    case Phase::Acceleration:
    case Phase::Rotation:
    case Phase::Climb:
        return Maneuver::TakeOff;
    default:
        return Maneuver::Landing;
    }
}

Phase initial_phase(Maneuver maneuver) {
    return maneuver == Maneuver::TakeOff ? Phase::Taxi : Phase::Approach;
}

bool is_ground_phase(Phase phase) {
    switch (phase) {
    case Phase::Taxi:
    case Phase::Acceleration:
    case Phase::Rotation:
    case Phase::Touchdown:
    case Phase::Ground:
        return true;
    default:
        return false;
    }
}

std::string_view to_string(Phase phase) {
    for (const auto& [p, name] : kPhaseNames) {
        if (p == phase) {
            return name;
        }
    }
    return "Unknown";
}

std::string_view to_string(Maneuver maneuver) {
    return maneuver == Maneuver::TakeOff ? "takeoff" : "landing";
}

Phase phase_from_string(std::string_view name) {
    for (const auto& [p, n] : kPhaseNames) {
        if (n == name) {
            return p;
        }
    }
    throw std::invalid_argument("unknown phase tag: " + std::string(name));
}

double SpeedSchedule::at(SpeedMark mark) const {
    for (const auto& target : targets) {
        if (target.mark == mark) {
            return target.speed;
        }
    }
    throw std::out_of_range("speed mark not in schedule");
}

SpeedSchedule takeoff_schedule(double v_stall) {
    return {Maneuver::TakeOff,
            {{SpeedMark::V0, 0.0},
             {SpeedMark::V1, 0.5 * v_stall},
             {SpeedMark::VR, 1.1 * v_stall},
             {SpeedMark::VLOF, 1.15 * v_stall},
             {SpeedMark::V2, 1.2 * v_stall}}};
}

SpeedSchedule landing_schedule(double v_stall) {
    return {Maneuver::Landing,
            {{SpeedMark::VREF, 1.3 * v_stall},
             {SpeedMark::VTD, 1.1 * v_stall},
             {SpeedMark::V0, 0.0}}};
}

void RampSpec::validate(std::size_t segments) const {
    if (ramp.size() != segments) {
        throw ConfigError("ramp spec needs " + std::to_string(segments) + " segment durations, got " +
                          std::to_string(ramp.size()));
    }
    if (!hold.empty() && hold.size() != segments) {
        throw ConfigError("hold spec needs " + std::to_string(segments) + " entries, got " +
                          std::to_string(hold.size()));
    }
    for (double r : ramp) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw ConfigError("ramp duration must be > 0");
        }
    }
    for (double h : hold) {
        if (!(h >= 0.0) || !std::isfinite(h)) {
            throw ConfigError("hold duration must be >= 0");
        }
    }
}

double desired_pitch(double V_d, const PitchProfileParams& p) {
    const double x = (V_d - p.c) / p.d;
    return p.theta_lim * std::exp(-0.5 * x * x);
}

SpeedReference reference_speed(double t, const SpeedSchedule& schedule, const RampSpec& ramp) {
    const auto& targets = schedule.targets;
    ramp.validate(targets.size() - 1);

    double segment_start = 0.0;
    for (std::size_t i = 0; i + 1 < targets.size(); ++i) {
        const double from = targets[i].speed;
        const double to = targets[i + 1].speed;
        const double duration = ramp.ramp[i];
        if (t < segment_start + duration) {
            const double s = (t - segment_start) / duration;
            const double delta = to - from;
            return {from + delta * s * s * (3.0 - 2.0 * s),
                    delta * 6.0 * s * (1.0 - s) / duration,
                    delta * (6.0 - 12.0 * s) / (duration * duration)};
        }
        segment_start += duration;
        if (t < segment_start + hold_of(ramp, i)) {
            return {to, 0.0, 0.0};
        }
        segment_start += hold_of(ramp, i);
    }
    return {targets.back().speed, 0.0, 0.0};
}

Setpoint setpoint(double t, const SpeedSchedule& schedule, const PitchProfileParams& p,
                  const RampSpec& ramp) {
    const auto ref = reference_speed(t, schedule, ramp);
    const double theta_d = desired_pitch(ref.V, p);
    // Derivatives of the Gaussian with respect to the reference speed.
    const double inv_d2 = 1.0 / (p.d * p.d);
    const double offset = (ref.V - p.c) * inv_d2;
    const double dtheta_dV = -theta_d * offset;
    const double d2theta_dV2 = theta_d * (offset * offset - inv_d2);

    Setpoint sp;
    sp.u_d = ref.V;
    sp.du_d = ref.dV;
    sp.theta_d = theta_d;
    sp.q_d = dtheta_dV * ref.dV;
    sp.dq_d = d2theta_dV2 * ref.dV * ref.dV + dtheta_dV * ref.ddV;
    return sp;
}

Phase advance_phase(Phase phase, const FlightState& state, const SpeedSchedule& schedule,
                    double N) {
    if (maneuver_of(phase) != schedule.maneuver) {
        throw ConfigError("phase " + std::string(to_string(phase)) + " does not belong to the " +
                          std::string(to_string(schedule.maneuver)) + " schedule");
    }
    for (;;) {
        Phase next = phase;
        switch (phase) {
        case Phase::Taxi:
            if (state.u >= schedule.at(SpeedMark::V1)) next = Phase::Acceleration;
            break;
        case Phase::Acceleration:
            if (state.u >= schedule.at(SpeedMark::VR)) next = Phase::Rotation;
            break;
        case Phase::Rotation:
            if (state.u >= schedule.at(SpeedMark::VLOF) && N >= 0.0) next = Phase::Climb;
            break;
        case Phase::Approach:
            if (state.u <= schedule.at(SpeedMark::VREF)) next = Phase::Flare;
            break;
        case Phase::Flare:
            if (state.h >= 0.0) next = Phase::Touchdown;
            break;
        case Phase::Touchdown:
            if (state.u <= schedule.at(SpeedMark::VTD)) next = Phase::Ground;
            break;
        case Phase::Climb:
        case Phase::Ground:
            break;
        }
        if (next == phase) {
            return phase;
        }
        phase = next;
    }
}

} // namespace tolsim
