// CSV telemetry and run summaries.
#pragma once

#include "tolsim/simulator.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tolsim {

/// Column order of the telemetry CSV.
inline constexpr const char* kCsvHeader =
    "t,u,u_d,w,theta,theta_d,q,q_d,T,tau,h,altitude,V,phase,N,F_mu,e1,e2,e3,Vlyap,Vdot_total";

/// Shortest decimal text that parses back to exactly `value`.
[[nodiscard]] std::string format_number(double value);

void write_csv(const std::vector<SimRecord>& records, std::ostream& out);

/// Throws std::runtime_error naming the path and cause on I/O failure.
void emit_csv(const std::vector<SimRecord>& records, const std::string& path);

/// Rebuild records from a telemetry CSV. Only the columns present in the file
/// are filled; Lyapunov terms other than V and Vdot_total stay zero.
[[nodiscard]] std::vector<SimRecord> read_csv(std::istream& in);
[[nodiscard]] std::vector<SimRecord> read_csv(const std::string& path);

struct RunSummary {
    Maneuver maneuver = Maneuver::TakeOff;
    Phase terminal_phase = Phase::Taxi;
    std::optional<double> liftoff_t;
    std::optional<double> touchdown_t;
    std::optional<double> stop_t;
    ErrorVector terminal_errors{};
    double max_positive_vdot = 0.0;      // largest Vdot_total > 0, or 0
    double fraction_vdot_nonpositive = 0.0;
    double final_altitude = 0.0;         // positive up [m]
    double final_t = 0.0;
    std::size_t steps = 0;

    bool operator==(const RunSummary&) const = default;
};

/// Throws std::invalid_argument on an empty record list.
[[nodiscard]] RunSummary summarize(const std::vector<SimRecord>& records);

[[nodiscard]] std::string format_summary(const RunSummary& summary);

} // namespace tolsim
