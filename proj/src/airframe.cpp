#include "tolsim/airframe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tolsim {

namespace {

void require(bool ok, const char* what) {
    if (!ok) {
        throw std::invalid_argument(std::string("aircraft parameter invariant violated: ") + what);
    }
}

} // namespace

void AircraftParams::validate() const {
    require(std::isfinite(m) && m > 0.0, "m > 0");
    require(std::isfinite(S) && S > 0.0, "S > 0");
    require(std::isfinite(rho) && rho > 0.0, "rho > 0");
    require(std::isfinite(C_L_max) && C_L_max > 0.0, "C_L_max > 0");
    require(std::isfinite(g) && g > 0.0, "g > 0");
    require(std::isfinite(mu) && mu >= 0.0 && mu < 1.0, "0 <= mu < 1");
    require(std::isfinite(aero.C_L0) && std::isfinite(aero.C_L_alpha), "lift coefficients finite");
    require(std::isfinite(aero.C_D0) && aero.C_D0 > 0.0, "C_D0 > 0");
    require(std::isfinite(aero.k_induced) && aero.k_induced >= 0.0, "k_induced >= 0");
}

bool FlightState::finite() const {
    return std::isfinite(u) && std::isfinite(w) && std::isfinite(theta) && std::isfinite(q) &&
           std::isfinite(h) && std::isfinite(t);
}

double stall_speed(const AircraftParams& params) {
    return std::sqrt(2.0 * params.m * params.g / (params.rho * params.C_L_max * params.S));
}

double airspeed(const FlightState& state) {
    return std::hypot(state.u, state.w);
}

double angle_of_attack(const FlightState& state) {
    if (state.u == 0.0 && state.w == 0.0) {
        return 0.0;
    }
    return std::atan2(state.w, state.u);
}

double lift_coefficient(const AircraftParams& params, double alpha) {
    const auto& aero = params.aero;
    const double raw =
        aero.mode == AeroMode::Constant ? aero.C_L0 : aero.C_L0 + aero.C_L_alpha * alpha;
    return std::clamp(raw, -params.C_L_max, params.C_L_max);
}

double drag_coefficient(const AircraftParams& params, double alpha) {
    const double cl = lift_coefficient(params, alpha);
    return params.aero.C_D0 + params.aero.k_induced * cl * cl;
}

AeroForces lift_drag(const AircraftParams& params, double V, double alpha) {
    const double qbar = 0.5 * params.rho * params.S * V * V;
    return {qbar * lift_coefficient(params, alpha), qbar * drag_coefficient(params, alpha)};
}

} // namespace tolsim
