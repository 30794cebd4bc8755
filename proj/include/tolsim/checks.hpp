// Headless verification suite: the reproduction targets and the invariants of
// the model, each reported as a pass/fail line. Shared by `tolsim check` and
// the acceptance test binary.
#pragma once

#include "tolsim/simulator.hpp"

#include <string>
#include <vector>

namespace tolsim::checks {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Scenario runs shared by several criteria.
struct AcceptanceRuns {
    std::vector<SimRecord> takeoff;            // preset, clamped thrust
    std::vector<SimRecord> landing;            // preset
    std::vector<SimRecord> takeoff_unclamped;
    std::vector<SimRecord> landing_unclamped;
    double takeoff_seconds = 0.0;              // wall-clock of `takeoff`
    double landing_seconds = 0.0;
};

[[nodiscard]] AcceptanceRuns run_acceptance_scenarios();

[[nodiscard]] CriterionResult stall_speed_value();
[[nodiscard]] CriterionResult threshold_ladder();
[[nodiscard]] CriterionResult takeoff_reproduction(const AcceptanceRuns& runs);
[[nodiscard]] CriterionResult landing_reproduction(const AcceptanceRuns& runs);
[[nodiscard]] CriterionResult feedback_linearization(std::size_t samples = 1000,
                                                     unsigned seed = 20240611u);
[[nodiscard]] CriterionResult lyapunov_monitor(const AcceptanceRuns& runs);
[[nodiscard]] CriterionResult saturation_properties(std::size_t samples = 10000);
[[nodiscard]] CriterionResult trajectory_gradient();
[[nodiscard]] CriterionResult integrator_order();
[[nodiscard]] CriterionResult friction_switch(const AcceptanceRuns& runs);

/// RMS of (central difference of V - analytic Vdot) over RMS of analytic Vdot.
[[nodiscard]] double lyapunov_fd_mismatch(const std::vector<SimRecord>& records, double dt);

[[nodiscard]] std::vector<CriterionResult> run_all();

/// "[PASS] 3 take-off reproduction: ..." lines.
[[nodiscard]] std::string format(const CriterionResult& result);

} // namespace tolsim::checks
