// Aircraft parameters, flight state and aerodynamic primitives for the
// longitudinal take-off/landing model.
//
// Conventions: body x forward, body z down, inertial z down. Pitch theta is
// positive nose-up, so a climbing aircraft has h < 0.
#pragma once

namespace tolsim {

/// How the lift/drag coefficients depend on angle of attack.
enum class AeroMode {
    AlphaDependent,  ///< C_L = C_L0 + C_L_alpha * alpha (clamped), parabolic polar
    Constant,        ///< coefficients frozen at the trim value C_L0
};

struct AeroCoeffModel {
    double C_L0 = 0.4;       // lift coefficient at zero alpha
    double C_L_alpha = 5.0;  // lift slope [1/rad]
    double C_D0 = 0.03;      // parasitic drag
    double k_induced = 0.05; // induced drag factor
    AeroMode mode = AeroMode::AlphaDependent;
};

struct AircraftParams {
    double m = 3.0;        // mass [kg]
    double S = 2.0;        // wing area [m^2]
    double rho = 1.22;     // air density [kg/m^3]
    double C_L_max = 1.25; // max lift coefficient
    double mu = 0.02;      // rolling friction coefficient
    double g = 9.81;       // gravity [m/s^2]
    AeroCoeffModel aero{};

    /// Throws std::invalid_argument naming the first violated invariant.
    void validate() const;
};

struct FlightState {
    double u = 0.0;     // body forward velocity [m/s]
    double w = 0.0;     // body downward velocity [m/s]
    double theta = 0.0; // pitch [rad]
    double q = 0.0;     // pitch rate [rad/s]
    double h = 0.0;     // inertial z, positive down [m]
    double t = 0.0;     // time [s]

    [[nodiscard]] bool finite() const;
};

struct AeroForces {
    double lift = 0.0;
    double drag = 0.0;
};

[[nodiscard]] double stall_speed(const AircraftParams& params);

[[nodiscard]] double airspeed(const FlightState& state);

/// atan2(w, u); zero for a parked aircraft.
[[nodiscard]] double angle_of_attack(const FlightState& state);

[[nodiscard]] double lift_coefficient(const AircraftParams& params, double alpha);
[[nodiscard]] double drag_coefficient(const AircraftParams& params, double alpha);

/// L = K V^2 C_L, D = K V^2 C_D with K = rho S / 2.
[[nodiscard]] AeroForces lift_drag(const AircraftParams& params, double V, double alpha);

} // namespace tolsim
