// Unified take-off/landing controller: saturated feedback-linearising thrust,
// PD-plus-feedforward pitch torque, and the Lyapunov monitor.
#pragma once

#include "tolsim/airframe.hpp"
#include "tolsim/dynamics.hpp"
#include "tolsim/guidance.hpp"

#include <stdexcept>

namespace tolsim {

/// Linear saturation: identity on [-L, L], arctangent roll-off bounded by M.
struct SaturationParams {
    double L = 0.9;
    double M = 1.0;

    /// pi / (2 (M - L)); infinite when L == M.
    [[nodiscard]] double n() const;
    void validate() const;
};

struct ControlGains {
    double k_T = 10.0;
    double k_theta = 3.3;
    double k_q = 2.0;

    void validate() const;
};

/// Where the speed gain sits relative to the 1/a factor of the thrust law.
enum class SpeedGainScale {
    /// de1/dt = -a k_T sigma(e1), a = 1/m.
    Printed,
    /// de1/dt = -k_T sigma(e1).
    Proof,
};

struct ControllerOptions {
    GroundContactMode contact_mode = GroundContactMode::SignedLoad;
    SpeedGainScale scale = SpeedGainScale::Printed;
    bool clamp_negative_thrust = true;
};

struct ErrorVector {
    double e1 = 0.0; // u - u_d
    double e2 = 0.0; // theta - theta_d
    double e3 = 0.0; // q - q_d

    bool operator==(const ErrorVector&) const = default;
};

struct LyapunovSample {
    double V = 0.0;
    double Vdot1 = 0.0; // -k_T e1 sigma(e1)
    double Vdot2 = 0.0; // -k_q e3^2
    double Vdot3 = 0.0; // e2 e3 (1 - k_theta)
    double Vdot_total = 0.0;
};

/// Raised when the thrust law would divide by (1 -/+ mu sin theta) ~ 0.
class ControlError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] double saturate(double s, const SaturationParams& p);

[[nodiscard]] ErrorVector tracking_errors(const FlightState& state, const Setpoint& sp);

/// Closed-loop rate of the speed error: de1/dt = -speed_error_gain() * sigma(e1).
[[nodiscard]] double speed_error_gain(const AircraftParams& params, const ControlGains& gains,
                                      SpeedGainScale scale);

/// Thrust that cancels the u-dynamics so that de1/dt = -speed_error_gain() sigma(e1).
/// The friction switch is resolved against the thrust it produces, since the
/// normal force itself depends on T sin(theta). Never clamped.
[[nodiscard]] double thrust_command(const FlightState& state, const Setpoint& sp,
                                    const AircraftParams& params, const ControlGains& gains,
                                    const SaturationParams& satp,
                                    GroundContactMode mode = GroundContactMode::SignedLoad,
                                    SpeedGainScale scale = SpeedGainScale::Printed);

/// -k_theta e2 - k_q e3 + dq_d.
[[nodiscard]] double torque_command(const FlightState& state, const Setpoint& sp,
                                    const ControlGains& gains);

/// Both inputs, with the thrust clamp applied if requested.
[[nodiscard]] ControlCommand control_command(const FlightState& state, const Setpoint& sp,
                                             const AircraftParams& params,
                                             const ControlGains& gains,
                                             const SaturationParams& satp,
                                             const ControllerOptions& options);

/// Uses gains.k_T as the e1 gain verbatim; see monitor_gains().
[[nodiscard]] LyapunovSample lyapunov_sample(const ErrorVector& err, const ControlGains& gains,
                                             const SaturationParams& satp);

/// Gains whose k_T equals the configured closed-loop e1 gain, so that
/// lyapunov_sample() reports the true time derivative.
[[nodiscard]] ControlGains monitor_gains(const AircraftParams& params, const ControlGains& gains,
                                         SpeedGainScale scale);

} // namespace tolsim
