// tolsim: take-off / landing simulation front end.
//
//   tolsim takeoff [--config PATH] [--out PATH]
//   tolsim landing [--config PATH] [--out PATH]
//   tolsim sweep --param NAME --values LIST [--config PATH] [--out DIR]
//   tolsim check
//
// Exit status: 0 success, 1 runtime error, 2 usage error.

#include "tolsim/checks.hpp"
#include "tolsim/config.hpp"
#include "tolsim/report.hpp"
#include "tolsim/simulator.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace tolsim;

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

ScenarioConfig load(const std::string& config_path, std::optional<Maneuver> maneuver) {
    if (config_path.empty()) {
        return preset(maneuver.value_or(Maneuver::TakeOff));
    }
    return parse_config(config_path, maneuver);
}

int run_single(Maneuver maneuver, const std::string& config_path, const std::string& out_path) {
    const auto cfg = load(config_path, maneuver);
    std::vector<SimRecord> records;
    try {
        records = run_scenario(cfg);
    } catch (const SimulationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (!out_path.empty() && !e.records.empty()) {
            emit_csv(e.records, out_path);
            std::cerr << "partial records written to " << out_path << '\n';
        }
        return kRuntimeError;
    }
    if (!out_path.empty()) {
        emit_csv(records, out_path);
    }
    std::cout << format_summary(summarize(records));
    return 0;
}

std::vector<std::string> split_values(const std::string& list) {
    std::vector<std::string> values;
    std::string current;
    for (char c : list) {
        if (c == ',') {
            values.push_back(current);
            current.clear();
        } else if (c != ' ') {
            current += c;
        }
    }
    values.push_back(current);
    return values;
}

int run_sweep(const std::string& param, const std::string& value_list,
              const std::string& config_path, const std::string& out_dir,
              std::optional<Maneuver> maneuver) {
    const auto base = load(config_path, maneuver);
    const auto values = split_values(value_list);

    std::vector<ScenarioConfig> configs;
    for (const auto& v : values) {
        if (v.empty()) {
            throw ConfigError("empty value in --values list");
        }
        auto cfg = base;
        set_parameter(cfg, param, v);
        try {
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(param + " = " + v + ": " + e.what());
        }
        configs.push_back(cfg);
    }

    std::vector<std::future<std::vector<SimRecord>>> jobs;
    for (const auto& cfg : configs) {
        jobs.push_back(std::async(std::launch::async, [cfg] { return run_scenario(cfg); }));
    }

    std::filesystem::create_directories(out_dir);
    std::ofstream table(std::filesystem::path(out_dir) / "summary.csv");
    table << "param,value,terminal_phase,liftoff_t,touchdown_t,stop_t,e1,e2,e3,"
             "max_positive_vdot,fraction_vdot_nonpositive,final_altitude,csv\n";

    int status = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto name = std::string(to_string(base.maneuver)) + "_" + param + "_" + values[i] + ".csv";
        const auto path = (std::filesystem::path(out_dir) / name).string();
        std::vector<SimRecord> records;
        try {
            records = jobs[i].get();
        } catch (const SimulationError& e) {
            std::cerr << "error: " << param << " = " << values[i] << ": " << e.what() << '\n';
            if (!e.records.empty()) {
                emit_csv(e.records, path);
            }
            status = kRuntimeError;
            continue;
        }
        emit_csv(records, path);
        const auto s = summarize(records);
        auto opt = [](const std::optional<double>& t) { return t ? format_number(*t) : std::string(); };
        table << param << ',' << values[i] << ',' << to_string(s.terminal_phase) << ','
              << opt(s.liftoff_t) << ',' << opt(s.touchdown_t) << ',' << opt(s.stop_t) << ','
              << format_number(s.terminal_errors.e1) << ',' << format_number(s.terminal_errors.e2)
              << ',' << format_number(s.terminal_errors.e3) << ','
              << format_number(s.max_positive_vdot) << ','
              << format_number(s.fraction_vdot_nonpositive) << ','
              << format_number(s.final_altitude) << ',' << name << '\n';
        std::cout << "== " << param << " = " << values[i] << " -> " << path << '\n'
                  << format_summary(s);
    }
    return status;
}

int run_check() {
    bool all = true;
    for (const auto& result : checks::run_all()) {
        std::cout << checks::format(result) << '\n';
        all = all && result.passed;
    }
    return all ? 0 : kRuntimeError;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-wing take-off and landing simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;

    auto* takeoff = app.add_subcommand("takeoff", "Simulate a runway take-off");
    takeoff->add_option("--config", config_path, "Scenario file")->check(CLI::ExistingFile);
    takeoff->add_option("--out", out_path, "CSV telemetry output");

    auto* landing = app.add_subcommand("landing", "Simulate an approach and landing");
    landing->add_option("--config", config_path, "Scenario file")->check(CLI::ExistingFile);
    landing->add_option("--out", out_path, "CSV telemetry output");

    std::string param;
    std::string values;
    std::string out_dir = "sweep";
    std::string maneuver_name;
    auto* sweep = app.add_subcommand("sweep", "Run one scenario per parameter value");
    sweep->add_option("--param", param, "Parameter name (key or section.key)")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required();
    sweep->add_option("--config", config_path, "Scenario file")->check(CLI::ExistingFile);
    sweep->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sweep->add_option("--maneuver", maneuver_name, "takeoff or landing (default: from config)")
        ->check(CLI::IsMember({"takeoff", "landing"}));

    app.add_subcommand("check", "Run the verification suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kUsageError;
    }

    try {
        if (*takeoff) {
            return run_single(Maneuver::TakeOff, config_path, out_path);
        }
        if (*landing) {
            return run_single(Maneuver::Landing, config_path, out_path);
        }
        if (*sweep) {
            std::optional<Maneuver> maneuver;
            if (!maneuver_name.empty()) {
                maneuver = maneuver_name == "takeoff" ? Maneuver::TakeOff : Maneuver::Landing;
            }
            return run_sweep(param, values, config_path, out_dir, maneuver);
        }
        return run_check();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}
