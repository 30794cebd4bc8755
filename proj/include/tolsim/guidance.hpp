// Phase-dependent reference trajectories for take-off and landing.
//
// The speed reference is a time profile through the scheduled target speeds:
// each segment is a C1 cubic ease (smoothstep) followed by an optional hold.
// Pitch is a Gaussian of the reference speed, and the pitch-rate reference
// and its derivative follow from the chain rule.
#pragma once

#include "tolsim/airframe.hpp"

#include <stdexcept>
#include <string_view>
#include <vector>

namespace tolsim {

enum class Maneuver { TakeOff, Landing };

enum class Phase {
    Taxi,
    Acceleration,
    Rotation,
    Climb,
    Approach,
    Flare,
    Touchdown,
    Ground,
};

[[nodiscard]] Maneuver maneuver_of(Phase phase);
[[nodiscard]] Phase initial_phase(Maneuver maneuver);
/// Taxi, Acceleration, Rotation, Touchdown, Ground.
[[nodiscard]] bool is_ground_phase(Phase phase);
[[nodiscard]] std::string_view to_string(Phase phase);
[[nodiscard]] std::string_view to_string(Maneuver maneuver);
/// Throws std::invalid_argument for unknown names.
[[nodiscard]] Phase phase_from_string(std::string_view name);

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class SpeedMark { V0, V1, VR, VLOF, V2, VREF, VTD };

struct SpeedSchedule {
    struct Target {
        SpeedMark mark;
        double speed;
    };

    Maneuver maneuver = Maneuver::TakeOff;
    std::vector<Target> targets; // in the order they are flown

    /// Throws std::out_of_range if the mark is not part of this schedule.
    [[nodiscard]] double at(SpeedMark mark) const;
};

/// {V0 = 0, V1 = 0.5, VR = 1.1, VLOF = 1.15, V2 = 1.2} x V_stall.
[[nodiscard]] SpeedSchedule takeoff_schedule(double v_stall);
/// {VREF = 1.3, VTD = 1.1, V0 = 0} x V_stall.
[[nodiscard]] SpeedSchedule landing_schedule(double v_stall);

struct PitchProfileParams {
    double theta_lim = 0.22; // peak (or trough) pitch [rad]
    double c = 2.0;          // Gaussian center [m/s]
    double d = 15.0;         // Gaussian width [m/s]
};

/// Durations of the speed segments between consecutive schedule targets.
struct RampSpec {
    std::vector<double> ramp; // ease duration of each segment [s]
    std::vector<double> hold; // hold after each ease [s]; empty means no holds

    /// Throws ConfigError unless ramp.size() == segments, every ramp > 0 and
    /// every hold >= 0.
    void validate(std::size_t segments) const;
};

struct SpeedReference {
    double V = 0.0;   // [m/s]
    double dV = 0.0;  // [m/s^2]
    double ddV = 0.0; // [m/s^3]
};

struct Setpoint {
    double u_d = 0.0;
    double du_d = 0.0;
    double theta_d = 0.0;
    double q_d = 0.0;
    double dq_d = 0.0;
};

/// theta_lim * exp(-0.5 (V_d - c)^2 / d^2).
[[nodiscard]] double desired_pitch(double V_d, const PitchProfileParams& p);

[[nodiscard]] SpeedReference reference_speed(double t, const SpeedSchedule& schedule,
                                             const RampSpec& ramp);

[[nodiscard]] Setpoint setpoint(double t, const SpeedSchedule& schedule,
                                const PitchProfileParams& p, const RampSpec& ramp);

/// Apply every velocity-threshold transition enabled by the current state.
/// `N` is the wheel load; lift-off requires N >= 0.
[[nodiscard]] Phase advance_phase(Phase phase, const FlightState& state,
                                  const SpeedSchedule& schedule, double N);

} // namespace tolsim
