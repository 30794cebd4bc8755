#include "tolsim/report.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace tolsim {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double to_double(std::string_view text, std::size_t line_no) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad number '" +
                                 std::string(text) + "'");
    }
    return value;
}

} // namespace

std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buf.data(), ptr);
}

void write_csv(const std::vector<SimRecord>& records, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        const double cols_before_phase[] = {
            r.t,          r.state.u, r.setpoint.u_d, r.state.w, r.state.theta, r.setpoint.theta_d,
            r.state.q,    r.setpoint.q_d, r.cmd.T,   r.cmd.tau, r.state.h,     0.0 - r.state.h,
            r.V};
        for (double v : cols_before_phase) {
            out << format_number(v) << ',';
        }
        out << to_string(r.phase);
        const double cols_after_phase[] = {r.N,         r.F_mu,      r.errors.e1, r.errors.e2,
                                           r.errors.e3, r.lyap.V, r.lyap.Vdot_total};
        for (double v : cols_after_phase) {
            out << ',' << format_number(v);
        }
        out << '\n';
    }
}

void emit_csv(const std::vector<SimRecord>& records, const std::string& path) {
    if (records.empty()) {
        throw std::invalid_argument("refusing to write an empty record set to " + path);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing: " + std::strerror(errno));
    }
    write_csv(records, out);
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed: " + std::strerror(errno));
    }
}

std::vector<SimRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("csv header does not match the telemetry schema");
    }
    std::vector<SimRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto f = split(line);
        if (f.size() != 21) {
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 21 fields");
        }
        SimRecord r;
        r.t = to_double(f[0], line_no);
        r.state.t = r.t;
        r.state.u = to_double(f[1], line_no);
        r.setpoint.u_d = to_double(f[2], line_no);
        r.state.w = to_double(f[3], line_no);
        r.state.theta = to_double(f[4], line_no);
        r.setpoint.theta_d = to_double(f[5], line_no);
        r.state.q = to_double(f[6], line_no);
        r.setpoint.q_d = to_double(f[7], line_no);
        r.cmd.T = to_double(f[8], line_no);
        r.cmd.tau = to_double(f[9], line_no);
        r.state.h = to_double(f[10], line_no);
        r.V = to_double(f[12], line_no);
        r.phase = phase_from_string(f[13]);
        r.N = to_double(f[14], line_no);
        r.F_mu = to_double(f[15], line_no);
        r.errors = {to_double(f[16], line_no), to_double(f[17], line_no),
                    to_double(f[18], line_no)};
        r.lyap.V = to_double(f[19], line_no);
        r.lyap.Vdot_total = to_double(f[20], line_no);
        records.push_back(r);
    }
    return records;
}

std::vector<SimRecord> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "': " + std::strerror(errno));
    }
    return read_csv(in);
}

RunSummary summarize(const std::vector<SimRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("cannot summarize an empty run");
    }
    RunSummary s;
    const auto& last = records.back();
    s.maneuver = maneuver_of(last.phase);
    s.terminal_phase = last.phase;
    s.terminal_errors = last.errors;
    s.final_altitude = -last.state.h;
    s.final_t = last.t;
    s.steps = records.size();

    for (const auto& e : detect_events(records)) {
        switch (e.kind) {
        case EventKind::Liftoff: s.liftoff_t = e.t; break;
        case EventKind::Touchdown: s.touchdown_t = e.t; break;
        case EventKind::Stop: s.stop_t = e.t; break;
        }
    }
    std::size_t nonpositive = 0;
    for (const auto& r : records) {
        if (r.lyap.Vdot_total <= 0.0) {
            ++nonpositive;
        } else {
            s.max_positive_vdot = std::max(s.max_positive_vdot, r.lyap.Vdot_total);
        }
    }
    s.fraction_vdot_nonpositive =
        static_cast<double>(nonpositive) / static_cast<double>(records.size());
    return s;
}

std::string format_summary(const RunSummary& s) {
    auto event = [](const std::optional<double>& t) {
        return t ? format_number(*t) + " s" : std::string("-");
    };
    std::ostringstream out;
    out << "maneuver:            " << to_string(s.maneuver) << '\n'
        << "terminal phase:      " << to_string(s.terminal_phase) << '\n'
        << "final time:          " << format_number(s.final_t) << " s (" << s.steps
        << " steps)\n"
        << "liftoff:             " << event(s.liftoff_t) << '\n'
        << "touchdown:           " << event(s.touchdown_t) << '\n'
        << "stop:                " << event(s.stop_t) << '\n'
        << "terminal e1/e2/e3:   " << format_number(s.terminal_errors.e1) << " / "
        << format_number(s.terminal_errors.e2) << " / " << format_number(s.terminal_errors.e3)
        << '\n'
        << "max Vdot > 0:        " << format_number(s.max_positive_vdot) << '\n'
        << "steps with Vdot<=0:  " << std::fixed << std::setprecision(2)
        << 100.0 * s.fraction_vdot_nonpositive << " %\n"
        << "final altitude (up): " << format_number(s.final_altitude) << " m\n";
    return out.str();
}

} // namespace tolsim
