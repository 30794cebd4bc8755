#include "tolsim/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace tolsim {

namespace {

constexpr double kSingularDenominator = 1e-6;

double solve_affine(double numerator, double denominator) {
    if (std::abs(denominator) < kSingularDenominator) {
        throw ControlError("thrust cancellation is singular: |1 - F_mu sin(theta)| = " +
                           std::to_string(std::abs(denominator)));
    }
    return numerator / denominator;
}

} // namespace

double SaturationParams::n() const {
    if (M == L) {
        return std::numeric_limits<double>::infinity();
    }
    return std::numbers::pi / (2.0 * (M - L));
}

void SaturationParams::validate() const {
    if (!(std::isfinite(L) && std::isfinite(M) && L > 0.0 && L <= M)) {
        throw std::invalid_argument("saturation invariant violated: 0 < L <= M");
    }
}

void ControlGains::validate() const {
    if (!(std::isfinite(k_T) && k_T > 0.0) || !(std::isfinite(k_theta) && k_theta > 0.0) ||
        !(std::isfinite(k_q) && k_q > 0.0)) {
        throw std::invalid_argument("gains must be positive real numbers (k_T, k_theta, k_q > 0)");
    }
}

double saturate(double s, const SaturationParams& p) {
    if (std::abs(s) <= p.L) {
        return s;
    }
    if (p.M == p.L) {
        return std::copysign(p.L, s);
    }
    const double n = p.n();
    if (s > p.L) {
        return std::atan(n * (s - p.L)) / n + p.L;
    }
    return std::atan(n * (s + p.L)) / n - p.L;
}

ErrorVector tracking_errors(const FlightState& state, const Setpoint& sp) {
    return {state.u - sp.u_d, state.theta - sp.theta_d, state.q - sp.q_d};
}

double speed_error_gain(const AircraftParams& params, const ControlGains& gains,
                        SpeedGainScale scale) {
    return scale == SpeedGainScale::Printed ? gains.k_T / params.m : gains.k_T;
}

double thrust_command(const FlightState& state, const Setpoint& sp, const AircraftParams& params,
                      const ControlGains& gains, const SaturationParams& satp,
                      GroundContactMode mode, SpeedGainScale scale) {
    const auto snap = aero_snapshot(params, state);
    const double m = params.m;
    const double sin_t = std::sin(state.theta);
    const double e1 = state.u - sp.u_d;

    // Body-x force the closed loop asks for, and the part of it available
    // without thrust or friction.
    const double required =
        m * (sp.du_d - speed_error_gain(params, gains, scale) * saturate(e1, satp));
    const double drive0 = m * (-state.q * state.w - params.g * sin_t) +
                          snap.lift * std::sin(snap.alpha) - snap.drag * std::cos(snap.alpha);

    const double frictionless = required - drive0;
    if (!snap.on_runway || snap.support + frictionless * sin_t >= 0.0 || params.mu == 0.0) {
        return frictionless;
    }

    // Wheels loaded: friction coefficient is mu, and N = support + T sin(theta) < 0.
    // Either branch gives N(T) = N(frictionless) / (1 -/+ mu sin(theta)) with a
    // positive denominator, so the wheels stay loaded under the solved thrust.
    const double mu = params.mu;
    if (mode == GroundContactMode::SignedLoad) {
        // drive0 + T - mu N = required
        return solve_affine(required - drive0 + mu * snap.support, 1.0 - mu * sin_t);
    }
    double direction = state.u > 0.0 ? 1.0 : (state.u < 0.0 ? -1.0 : 0.0);
    if (direction == 0.0) {
        if (required == 0.0) {
            // Static band: zero net drive keeps a parked aircraft parked.
            return -drive0;
        }
        direction = required > 0.0 ? 1.0 : -1.0;
    }
    // drive0 + T + direction mu N = required
    return solve_affine(required - drive0 - direction * mu * snap.support,
                        1.0 + direction * mu * sin_t);
}

double torque_command(const FlightState& state, const Setpoint& sp, const ControlGains& gains) {
    const auto err = tracking_errors(state, sp);
    return -gains.k_theta * err.e2 - gains.k_q * err.e3 + sp.dq_d;
}

ControlCommand control_command(const FlightState& state, const Setpoint& sp,
                               const AircraftParams& params, const ControlGains& gains,
                               const SaturationParams& satp, const ControllerOptions& options) {
    ControlCommand cmd;
    cmd.T = thrust_command(state, sp, params, gains, satp, options.contact_mode, options.scale);
    if (options.clamp_negative_thrust) {
        cmd.T = std::max(cmd.T, 0.0);
    }
    cmd.tau = torque_command(state, sp, gains);
    return cmd;
}

LyapunovSample lyapunov_sample(const ErrorVector& err, const ControlGains& gains,
                               const SaturationParams& satp) {
    LyapunovSample s;
    s.V = 0.5 * (err.e1 * err.e1 + err.e2 * err.e2 + err.e3 * err.e3);
    s.Vdot1 = -gains.k_T * err.e1 * saturate(err.e1, satp);
    s.Vdot2 = -gains.k_q * err.e3 * err.e3;
    s.Vdot3 = err.e2 * err.e3 * (1.0 - gains.k_theta);
    s.Vdot_total = s.Vdot1 + s.Vdot2 + s.Vdot3;
    return s;
}

ControlGains monitor_gains(const AircraftParams& params, const ControlGains& gains,
                           SpeedGainScale scale) {
    ControlGains out = gains;
    out.k_T = speed_error_gain(params, gains, scale);
    return out;
}

} // namespace tolsim
