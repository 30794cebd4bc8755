// Fixed-step closed-loop simulation of guidance + control + dynamics.
#pragma once

#include "tolsim/airframe.hpp"
#include "tolsim/control.hpp"
#include "tolsim/dynamics.hpp"
#include "tolsim/guidance.hpp"

#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace tolsim {

struct ScenarioConfig {
    Maneuver maneuver = Maneuver::TakeOff;
    AircraftParams params{};
    ControlGains gains{};
    SaturationParams satp{};
    PitchProfileParams pitch_profile{};
    RampSpec ramp{};
    FlightState initial{};
    double dt = 1e-3;
    double t_max = 30.0;
    GroundContactMode contact_mode = GroundContactMode::SignedLoad;
    bool thrust_clamp = true;
    SpeedGainScale scale = SpeedGainScale::Printed;

    /// Throws ConfigError (or std::invalid_argument from the parameter types).
    void validate() const;
    [[nodiscard]] SpeedSchedule schedule() const;
    [[nodiscard]] ControllerOptions controller_options() const;
};

struct SimRecord {
    double t = 0.0;
    FlightState state{};
    Setpoint setpoint{};
    ErrorVector errors{};
    ControlCommand cmd{};
    Phase phase = Phase::Taxi;
    double N = 0.0;    // wheel load
    double F_mu = 0.0; // friction coefficient in effect
    LyapunovSample lyap{};
    double V = 0.0;
};

/// Integration failed; carries the records produced before the failure.
class SimulationError : public std::runtime_error {
public:
    SimulationError(const std::string& what, std::vector<SimRecord> partial)
        : std::runtime_error(what), records(std::move(partial)) {}

    std::vector<SimRecord> records;
};

/// Landing runs stop once the aircraft rolls slower than this in Ground.
inline constexpr double kStopSpeed = 0.05;

/// Classical RK4 with the command held over the step. Throws DynamicsError
/// on a non-finite stage or result.
[[nodiscard]] FlightState rk4_step(const AircraftParams& params, const FlightState& state,
                                   const ControlCommand& cmd, GroundContactMode mode, double dt);

/// Keep the aircraft on the runway surface: clamp h to 0 and, while the wheels
/// are loaded (or the aircraft still sinks), remove the vertical inertial
/// velocity by setting w = u tan(theta). Body u is left untouched so the
/// controller's speed loop sees an unmodified plant.
[[nodiscard]] FlightState apply_runway_constraint(const AircraftParams& params,
                                                  const FlightState& state, double T);

[[nodiscard]] std::vector<SimRecord> run_scenario(const ScenarioConfig& cfg);

enum class EventKind { Liftoff, Touchdown, Stop };

struct Event {
    EventKind kind;
    double t;
};

[[nodiscard]] std::string_view to_string(EventKind kind);

/// First lift-off (wheel load turning non-negative in a ground phase), first
/// touchdown (h crossing to >= 0 from the air), first stop in Ground.
[[nodiscard]] std::vector<Event> detect_events(const std::vector<SimRecord>& records);

} // namespace tolsim
