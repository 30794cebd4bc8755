#include "tolsim/checks.hpp"

#include "tolsim/config.hpp"
#include "tolsim/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace tolsim::checks {

namespace {

std::string num(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const SimRecord* record_at(const std::vector<SimRecord>& records, double t) {
    for (const auto& r : records) {
        if (r.t == t) {
            return &r;
        }
    }
    return nullptr;
}

} // namespace

AcceptanceRuns run_acceptance_scenarios() {
    AcceptanceRuns runs;

    auto start = std::chrono::steady_clock::now();
    runs.takeoff = run_scenario(takeoff_preset());
    runs.takeoff_seconds = seconds_since(start);

    start = std::chrono::steady_clock::now();
    runs.landing = run_scenario(landing_preset());
    runs.landing_seconds = seconds_since(start);

    auto takeoff = takeoff_preset();
    takeoff.thrust_clamp = false;
    runs.takeoff_unclamped = run_scenario(takeoff);

    auto landing = landing_preset();
    landing.thrust_clamp = false;
    runs.landing_unclamped = run_scenario(landing);
    return runs;
}

CriterionResult stall_speed_value() {
    const double v = stall_speed(AircraftParams{});
    return {1, "stall speed", std::abs(v - 4.39) <= 0.01, "V_stall = " + num(v) + " m/s"};
}

CriterionResult threshold_ladder() {
    // Reference ladder values use V_stall rounded to 4.39 m/s.
    const double v = 4.39;
    const auto to = takeoff_schedule(v);
    const auto ld = landing_schedule(v);
    const double to_expected[] = {0.0, 2.195, 4.829, 5.049, 5.268};
    const double ld_expected[] = {5.707, 4.829, 0.0};
    double worst = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        worst = std::max(worst, std::abs(to.targets[i].speed - to_expected[i]));
    }
    for (std::size_t i = 0; i < 3; ++i) {
        worst = std::max(worst, std::abs(ld.targets[i].speed - ld_expected[i]));
    }
    // Same factors against the computed stall speed, exactly.
    const double computed = stall_speed(AircraftParams{});
    const auto to_c = takeoff_schedule(computed);
    const double factors[] = {0.0, 0.5, 1.1, 1.15, 1.2};
    double factor_err = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        factor_err = std::max(factor_err, std::abs(to_c.targets[i].speed - factors[i] * computed));
    }
    return {2, "threshold ladder", worst <= 1e-3 && factor_err <= 1e-12,
            "max deviation " + num(worst) + " m/s at V_stall = 4.39; factor error " +
                num(factor_err) + " at computed V_stall = " + num(computed)};
}

CriterionResult takeoff_reproduction(const AcceptanceRuns& runs) {
    const auto& recs = runs.takeoff;
    CriterionResult res{3, "take-off reproduction", false, ""};
    if (recs.empty()) {
        res.detail = "no records";
        return res;
    }
    const auto events = detect_events(recs);
    const auto liftoff = std::find_if(events.begin(), events.end(),
                                      [](const Event& e) { return e.kind == EventKind::Liftoff; });
    bool friction_after = false;
    if (liftoff != events.end()) {
        for (const auto& r : recs) {
            if (r.t >= liftoff->t && r.F_mu != 0.0) {
                friction_after = true;
            }
        }
    }
    const auto& last = recs.back();
    const bool ok = last.phase == Phase::Climb && liftoff != events.end() && !friction_after &&
                    std::abs(last.errors.e1) < 0.1 && std::abs(last.errors.e2) < 0.02 &&
                    std::abs(last.errors.e3) < 0.02 && -last.state.h > 0.0 &&
                    runs.takeoff_seconds < 10.0;
    std::ostringstream d;
    d << "phase=" << to_string(last.phase)
      << " liftoff=" << (liftoff != events.end() ? num(liftoff->t) + "s" : "none")
      << " post-liftoff friction=" << (friction_after ? "yes" : "no") << " |e|=("
      << num(std::abs(last.errors.e1)) << ", " << num(std::abs(last.errors.e2)) << ", "
      << num(std::abs(last.errors.e3)) << ") altitude=" << num(-last.state.h)
      << "m runtime=" << num(runs.takeoff_seconds) << "s";
    res.passed = ok;
    res.detail = d.str();
    return res;
}

CriterionResult landing_reproduction(const AcceptanceRuns& runs) {
    const auto& recs = runs.landing;
    CriterionResult res{4, "landing reproduction", false, ""};
    if (recs.empty()) {
        res.detail = "no records";
        return res;
    }
    const auto schedule = landing_preset().schedule();
    const double v_td = schedule.at(SpeedMark::VTD);
    const auto events = detect_events(recs);
    const auto td = std::find_if(events.begin(), events.end(),
                                 [](const Event& e) { return e.kind == EventKind::Touchdown; });
    double h_td = std::numeric_limits<double>::quiet_NaN();
    if (td != events.end()) {
        if (const auto* r = record_at(recs, td->t)) {
            h_td = r->state.h;
        }
    }
    const bool reached_ground = std::any_of(recs.begin(), recs.end(), [](const SimRecord& r) {
        return r.phase == Phase::Ground;
    });
    const auto& last = recs.back();
    const bool ok = td != events.end() && std::abs(h_td) <= 0.1 && last.state.u <= v_td &&
                    reached_ground && runs.landing_seconds < 10.0;
    std::ostringstream d;
    d << "touchdown=" << (td != events.end() ? num(td->t) + "s" : "none") << " h_td=" << num(h_td)
      << " terminal u=" << num(last.state.u) << " (V_TD=" << num(v_td)
      << ") phase=" << to_string(last.phase) << " runtime=" << num(runs.landing_seconds) << "s";
    res.passed = ok;
    res.detail = d.str();
    return res;
}

CriterionResult feedback_linearization(std::size_t samples, unsigned seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&rng](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    const AircraftParams params;
    const ControlGains gains;
    const SaturationParams satp;

    double worst_speed = 0.0;
    double worst_pitch = 0.0;
    std::size_t grounded = 0;
    std::size_t airborne = 0;
    for (const auto mode : {GroundContactMode::SignedLoad, GroundContactMode::OpposingMotion}) {
        for (const auto scale : {SpeedGainScale::Printed, SpeedGainScale::Proof}) {
            for (std::size_t i = 0; i < samples; ++i) {
                FlightState s;
                const bool on_ground = i % 2 == 0;
                s.theta = uniform(-0.3, 0.3);
                if (on_ground) {
                    s.u = uniform(0.0, 6.0);
                    s.w = s.u * std::tan(s.theta) + uniform(-0.05, 0.05);
                    s.q = uniform(-0.2, 0.2);
                    s.h = 0.0;
                } else {
                    s.u = uniform(2.0, 10.0);
                    s.w = uniform(-1.5, 1.5);
                    s.q = uniform(-0.5, 0.5);
                    s.h = uniform(-100.0, -0.5);
                }
                Setpoint sp;
                sp.u_d = uniform(0.0, 7.0);
                sp.du_d = uniform(-1.5, 1.5);
                sp.theta_d = uniform(-0.3, 0.3);
                sp.q_d = uniform(-0.3, 0.3);
                sp.dq_d = uniform(-0.5, 0.5);

                const ControlCommand cmd{thrust_command(s, sp, params, gains, satp, mode, scale),
                                         torque_command(s, sp, gains)};
                const auto d = derivatives(params, s, cmd, mode);
                const auto e = tracking_errors(s, sp);
                if (wheel_load(params, s, cmd.T) < 0.0) {
                    ++grounded;
                } else {
                    ++airborne;
                }

                const double target_speed =
                    -speed_error_gain(params, gains, scale) * saturate(e.e1, satp);
                const double target_pitch = -gains.k_theta * e.e2 - gains.k_q * e.e3;
                // Relative to the target, with a 1 m/s^2 (1 rad/s^2) floor near zero.
                worst_speed = std::max(worst_speed, std::abs((d.du - sp.du_d) - target_speed) /
                                                        std::max(1.0, std::abs(target_speed)));
                worst_pitch = std::max(worst_pitch, std::abs((d.dq - sp.dq_d) - target_pitch) /
                                                        std::max(1.0, std::abs(target_pitch)));
            }
        }
    }
    const bool ok = worst_speed <= 1e-9 && worst_pitch <= 1e-9 && grounded > samples / 2 &&
                    airborne > samples / 2;
    return {5, "feedback-linearization oracle", ok,
            "max rel err de1 " + num(worst_speed) + ", de3 " + num(worst_pitch) + " over " +
                std::to_string(grounded) + " wheel-loaded / " + std::to_string(airborne) +
                " unloaded samples"};
}

double lyapunov_fd_mismatch(const std::vector<SimRecord>& records, double dt) {
    double err2 = 0.0;
    double ref2 = 0.0;
    for (std::size_t i = 1; i + 1 < records.size(); ++i) {
        const double fd = (records[i + 1].lyap.V - records[i - 1].lyap.V) / (2.0 * dt);
        const double analytic = records[i].lyap.Vdot_total;
        err2 += (fd - analytic) * (fd - analytic);
        ref2 += analytic * analytic;
    }
    return ref2 > 0.0 ? std::sqrt(err2 / ref2) : std::sqrt(err2);
}

CriterionResult lyapunov_monitor(const AcceptanceRuns& runs) {
    const double dt = takeoff_preset().dt;
    const double mismatch_to = lyapunov_fd_mismatch(runs.takeoff_unclamped, dt);
    const double mismatch_ld = lyapunov_fd_mismatch(runs.landing_unclamped, landing_preset().dt);

    std::size_t sign_violations = 0;
    std::size_t positive = 0;
    std::size_t unexplained = 0;
    double first_positive = -1.0;
    for (const auto* run : {&runs.takeoff_unclamped, &runs.landing_unclamped}) {
        for (const auto& r : *run) {
            if (r.lyap.Vdot1 > 0.0 || r.lyap.Vdot2 > 0.0) {
                ++sign_violations;
            }
            if (r.lyap.Vdot_total > 0.0) {
                if (positive++ == 0) {
                    first_positive = r.t;
                }
                if (!(r.errors.e2 * r.errors.e3 < 0.0)) {
                    ++unexplained;
                }
            }
        }
    }
    const bool ok = mismatch_to < 0.02 && mismatch_ld < 0.02 && sign_violations == 0 &&
                    unexplained == 0;
    std::ostringstream d;
    d << "FD mismatch take-off " << num(100.0 * mismatch_to) << "%, landing "
      << num(100.0 * mismatch_ld) << "%; Vdot1/Vdot2 sign violations " << sign_violations
      << "; Vdot>0 steps " << positive;
    if (positive > 0) {
        d << " (first at t=" << num(first_positive) << "s, " << unexplained
          << " without e2*e3<0)";
    }
    return {6, "Lyapunov monitor", ok, d.str()};
}

CriterionResult saturation_properties(std::size_t samples) {
    const SaturationParams p{0.9, 1.0};
    const double span = 20.0;
    std::size_t failures = 0;
    double prev = -std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (std::size_t i = 0; i < samples; ++i) {
        const double s = -span / 2 + span * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double sigma = saturate(s, p);
        if (s != 0.0 && !(s * sigma > 0.0)) ++failures;
        if (std::abs(s) <= p.L && sigma != s) ++failures;
        if (std::abs(sigma) > p.M) ++failures;
        if (sigma < prev) monotone = false;
        prev = sigma;
    }
    double jump = 0.0;
    for (const double edge : {p.L, -p.L}) {
        const double inside = saturate(edge, p);
        const double outside =
            saturate(std::nextafter(edge, std::copysign(std::numeric_limits<double>::infinity(), edge)), p);
        jump = std::max(jump, std::abs(outside - inside));
    }
    const bool ok = failures == 0 && monotone && jump <= 1e-12;
    return {7, "saturation properties", ok,
            std::to_string(failures) + " condition failures on " + std::to_string(samples) +
                " points, monotone=" + (monotone ? "yes" : "no") + ", jump at +/-L " + num(jump)};
}

CriterionResult trajectory_gradient() {
    const auto cfg = takeoff_preset();
    const auto schedule = cfg.schedule();
    const double h = 1e-4;

    std::vector<double> boundaries;
    double acc = 0.0;
    for (std::size_t i = 0; i < cfg.ramp.ramp.size(); ++i) {
        acc += cfg.ramp.ramp[i];
        boundaries.push_back(acc);
        acc += cfg.ramp.hold.empty() ? 0.0 : cfg.ramp.hold[i];
        boundaries.push_back(acc);
    }
    auto straddles = [&](double t) {
        return std::any_of(boundaries.begin(), boundaries.end(),
                           [&](double b) { return t - h <= b && b <= t + h; });
    };
    auto theta_d = [&](double t) {
        return desired_pitch(reference_speed(t, schedule, cfg.ramp).V, cfg.pitch_profile);
    };

    double q_err = 0.0, q_ref = 0.0, dq_err = 0.0, dq_ref = 0.0;
    const double t_end = acc + 1.0;
    for (double t = h; t + h < t_end; t += 1e-3) {
        const auto sp = setpoint(t, schedule, cfg.pitch_profile, cfg.ramp);
        const double q_fd = (theta_d(t + h) - theta_d(t - h)) / (2.0 * h);
        q_err = std::max(q_err, std::abs(q_fd - sp.q_d));
        q_ref = std::max(q_ref, std::abs(sp.q_d));
        if (!straddles(t)) {
            const double dq_fd = (setpoint(t + h, schedule, cfg.pitch_profile, cfg.ramp).q_d -
                                  setpoint(t - h, schedule, cfg.pitch_profile, cfg.ramp).q_d) /
                                 (2.0 * h);
            dq_err = std::max(dq_err, std::abs(dq_fd - sp.dq_d));
            dq_ref = std::max(dq_ref, std::abs(sp.dq_d));
        }
    }
    const double q_rel = q_err / q_ref;
    const double dq_rel = dq_err / dq_ref;
    return {8, "trajectory gradient check", q_rel < 1e-5 && dq_rel < 1e-5,
            "q_d rel err " + num(q_rel) + ", dq_d rel err " + num(dq_rel)};
}

CriterionResult integrator_order() {
    const AircraftParams params;
    const FlightState start{5.27, 0.46, 0.2148, 0.05, -50.0, 0.0};
    const ControlCommand cmd{6.0, 0.1};
    auto integrate = [&](double dt) {
        FlightState s = start;
        const auto n = std::llround(1.0 / dt);
        for (long long i = 0; i < n; ++i) {
            s = rk4_step(params, s, cmd, GroundContactMode::SignedLoad, dt);
        }
        return s;
    };
    auto distance = [](const FlightState& a, const FlightState& b) {
        return std::sqrt((a.u - b.u) * (a.u - b.u) + (a.w - b.w) * (a.w - b.w) +
                         (a.theta - b.theta) * (a.theta - b.theta) + (a.q - b.q) * (a.q - b.q) +
                         (a.h - b.h) * (a.h - b.h));
    };
    const auto reference = integrate(1e-3);
    const double coarse = distance(integrate(1e-2), reference);
    const double fine = distance(integrate(5e-3), reference);
    const double ratio = coarse / fine;
    return {9, "integrator order", ratio >= 12.0 && ratio <= 20.0,
            "error ratio " + num(ratio) + " (" + num(coarse) + " / " + num(fine) + ")"};
}

CriterionResult friction_switch(const AcceptanceRuns& runs) {
    std::size_t total = 0;
    std::size_t violations = 0;
    for (const auto* run : {&runs.takeoff, &runs.landing, &runs.takeoff_unclamped,
                            &runs.landing_unclamped}) {
        for (const auto& r : *run) {
            ++total;
            if ((r.F_mu > 0.0) != (r.N < 0.0)) {
                ++violations;
            }
        }
    }
    return {10, "friction switch invariant", violations == 0 && total > 0,
            std::to_string(violations) + " violations over " + std::to_string(total) + " records"};
}

std::vector<CriterionResult> run_all() {
    const auto runs = run_acceptance_scenarios();
    return {stall_speed_value(),    threshold_ladder(),     takeoff_reproduction(runs),
            landing_reproduction(runs), feedback_linearization(), lyapunov_monitor(runs),
            saturation_properties(), trajectory_gradient(), integrator_order(),
            friction_switch(runs)};
}

std::string format(const CriterionResult& result) {
    return std::string(result.passed ? "[PASS] " : "[FAIL] ") + std::to_string(result.id) + " " +
           result.name + ": " + result.detail;
}

} // namespace tolsim::checks
