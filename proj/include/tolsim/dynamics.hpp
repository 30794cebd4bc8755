// Longitudinal equations of motion with rolling resistance.
#pragma once

#include "tolsim/airframe.hpp"

#include <stdexcept>
#include <string>

namespace tolsim {

struct ControlCommand {
    double T = 0.0;   // thrust [N]
    double tau = 0.0; // pitch angular acceleration [rad/s^2]
};

struct StateDerivative {
    double du = 0.0;
    double dw = 0.0;
    double dtheta = 0.0;
    double dq = 0.0;
    double dh = 0.0;
};

/// How the rolling-resistance term enters the u-equation.
enum class GroundContactMode {
    /// -F_mu * N taken with its sign. With N < 0 on the
    /// runway this term pushes the aircraft forward.
    SignedLoad,
    /// Coulomb friction of magnitude F_mu * |N| opposing the rolling direction,
    /// with a static band at u = 0.
    OpposingMotion,
};

/// Non-finite derivative; `what()` names the offending term.
class DynamicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Aerodynamic quantities that depend only on the state, shared by the plant
/// and the controller so both see the same numbers.
struct AeroSnapshot {
    double V = 0.0;
    double alpha = 0.0;
    double lift = 0.0;
    double drag = 0.0;
    /// Normal force with the thrust contribution removed: N = support + T sin(theta).
    double support = 0.0;
    bool on_runway = false;
};

[[nodiscard]] AeroSnapshot aero_snapshot(const AircraftParams& params, const FlightState& state);

/// N = L cos(theta - alpha) - D sin(theta - alpha) + T sin(theta) - m g.
/// Negative means the runway carries part of the weight.
[[nodiscard]] double normal_force(const AircraftParams& params, const FlightState& state, double T,
                                  double L, double D, double alpha);

/// Gear touches the runway: h >= 0 in the z-down frame.
[[nodiscard]] inline bool on_runway(const FlightState& state) { return state.h >= 0.0; }

/// Load carried by the wheels. Equal to normal_force() while on the runway and
/// zero in the air, where there is nothing for the wheels to press against.
[[nodiscard]] double wheel_load(const AircraftParams& params, const FlightState& state, double T);

/// 0 if N >= 0, mu if N < 0.
[[nodiscard]] constexpr double effective_friction(double N, double mu) {
    return N >= 0.0 ? 0.0 : mu;
}

[[nodiscard]] StateDerivative derivatives(const AircraftParams& params, const FlightState& state,
                                          const ControlCommand& cmd, GroundContactMode mode);

[[nodiscard]] const char* to_string(GroundContactMode mode);

} // namespace tolsim
