#include "tolsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace tolsim {

namespace {

using Setter = std::function<void(ScenarioConfig&, std::string_view)>;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ConfigError("expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    text = trim(text);
    if (text.empty()) {
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? text.size() - start
                                                                              : comma - start);
        out.push_back(parse_number(piece));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

bool parse_bool(std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("expected a boolean, got '" + std::string(text) + "'");
}

Maneuver parse_maneuver(std::string_view text) {
    text = trim(text);
    if (text == "takeoff") return Maneuver::TakeOff;
    if (text == "landing") return Maneuver::Landing;
    throw ConfigError("maneuver must be 'takeoff' or 'landing', got '" + std::string(text) + "'");
}

template <typename Field>
Setter number(Field field) {
    return [field](ScenarioConfig& cfg, std::string_view v) { field(cfg) = parse_number(v); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = [] {
        std::map<std::string, Setter, std::less<>> t;
        // clang-format off
        t["aircraft.m"]         = number([](ScenarioConfig& c) -> double& { return c.params.m; });
        t["aircraft.S"]         = number([](ScenarioConfig& c) -> double& { return c.params.S; });
        t["aircraft.rho"]       = number([](ScenarioConfig& c) -> double& { return c.params.rho; });
        t["aircraft.C_L_max"]   = number([](ScenarioConfig& c) -> double& { return c.params.C_L_max; });
        t["aircraft.mu"]        = number([](ScenarioConfig& c) -> double& { return c.params.mu; });
        t["aircraft.g"]         = number([](ScenarioConfig& c) -> double& { return c.params.g; });
        t["aircraft.C_L0"]      = number([](ScenarioConfig& c) -> double& { return c.params.aero.C_L0; });
        t["aircraft.C_L_alpha"] = number([](ScenarioConfig& c) -> double& { return c.params.aero.C_L_alpha; });
        t["aircraft.C_D0"]      = number([](ScenarioConfig& c) -> double& { return c.params.aero.C_D0; });
        t["aircraft.k_induced"] = number([](ScenarioConfig& c) -> double& { return c.params.aero.k_induced; });
        t["gains.k_T"]          = number([](ScenarioConfig& c) -> double& { return c.gains.k_T; });
        t["gains.k_theta"]      = number([](ScenarioConfig& c) -> double& { return c.gains.k_theta; });
        t["gains.k_q"]          = number([](ScenarioConfig& c) -> double& { return c.gains.k_q; });
        t["saturation.L"]       = number([](ScenarioConfig& c) -> double& { return c.satp.L; });
        t["saturation.M"]       = number([](ScenarioConfig& c) -> double& { return c.satp.M; });
        t["pitch_profile.theta_lim"] = number([](ScenarioConfig& c) -> double& { return c.pitch_profile.theta_lim; });
        t["pitch_profile.c"]    = number([](ScenarioConfig& c) -> double& { return c.pitch_profile.c; });
        t["pitch_profile.d"]    = number([](ScenarioConfig& c) -> double& { return c.pitch_profile.d; });
        t["initial.u"]          = number([](ScenarioConfig& c) -> double& { return c.initial.u; });
        t["initial.w"]          = number([](ScenarioConfig& c) -> double& { return c.initial.w; });
        t["initial.theta"]      = number([](ScenarioConfig& c) -> double& { return c.initial.theta; });
        t["initial.q"]          = number([](ScenarioConfig& c) -> double& { return c.initial.q; });
        t["initial.h"]          = number([](ScenarioConfig& c) -> double& { return c.initial.h; });
        t["sim.dt"]             = number([](ScenarioConfig& c) -> double& { return c.dt; });
        t["sim.t_max"]          = number([](ScenarioConfig& c) -> double& { return c.t_max; });
        // clang-format on
        t["aircraft.aero_mode"] = [](ScenarioConfig& c, std::string_view v) {
            v = trim(v);
            if (v == "alpha") c.params.aero.mode = AeroMode::AlphaDependent;
            else if (v == "constant") c.params.aero.mode = AeroMode::Constant;
            else throw ConfigError("aero_mode must be 'alpha' or 'constant'");
        };
        t["gains.speed_gain_scale"] = [](ScenarioConfig& c, std::string_view v) {
            v = trim(v);
            if (v == "printed") c.scale = SpeedGainScale::Printed;
            else if (v == "proof") c.scale = SpeedGainScale::Proof;
            else throw ConfigError("speed_gain_scale must be 'printed' or 'proof'");
        };
        t["sim.contact_mode"] = [](ScenarioConfig& c, std::string_view v) {
            v = trim(v);
            if (v == "signed_load") c.contact_mode = GroundContactMode::SignedLoad;
            else if (v == "opposing_motion") c.contact_mode = GroundContactMode::OpposingMotion;
            else throw ConfigError("contact_mode must be 'signed_load' or 'opposing_motion'");
        };
        t["sim.thrust_clamp"] = [](ScenarioConfig& c, std::string_view v) {
            c.thrust_clamp = parse_bool(v);
        };
        t["sim.ramp"] = [](ScenarioConfig& c, std::string_view v) { c.ramp.ramp = parse_list(v); };
        t["sim.hold"] = [](ScenarioConfig& c, std::string_view v) { c.ramp.hold = parse_list(v); };
        t["sim.maneuver"] = [](ScenarioConfig& c, std::string_view v) {
            if (parse_maneuver(v) != c.maneuver) {
                throw ConfigError("maneuver conflicts with the selected preset");
            }
        };
        return t;
    }();
    return table;
}

const Setter& find_setter(std::string_view name) {
    const auto& table = setters();
    if (const auto it = table.find(name); it != table.end()) {
        return it->second;
    }
    if (name.find('.') == std::string_view::npos) {
        for (const auto& [full, setter] : table) {
            if (std::string_view(full).substr(full.find('.') + 1) == name) {
                return setter;
            }
        }
    }
    throw ConfigError("unknown parameter '" + std::string(name) + "'");
}

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line;
};

std::vector<Entry> tokenize(std::string_view text) {
    static const std::vector<std::string> kSections{"aircraft", "gains",   "saturation",
                                                    "pitch_profile", "initial", "sim"};
    std::vector<Entry> entries;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        auto line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto where = "line " + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(where + "malformed section header");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (std::find(kSections.begin(), kSections.end(), section) == kSections.end()) {
                throw ConfigError(where + "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(where + "expected key = value");
        }
        if (section.empty()) {
            throw ConfigError(where + "key outside of any section");
        }
        entries.push_back({section, std::string(trim(line.substr(0, eq))),
                           std::string(trim(line.substr(eq + 1))), line_no});
    }
    return entries;
}

} // namespace

ScenarioConfig takeoff_preset() {
    ScenarioConfig cfg;
    cfg.maneuver = Maneuver::TakeOff;
    cfg.pitch_profile = {0.22, 2.0, 15.0};
    cfg.initial = {};
    cfg.ramp = {{3.0, 3.0, 3.0, 3.0}, {}};
    cfg.t_max = 30.0;
    cfg.thrust_clamp = true;
    return cfg;
}

ScenarioConfig landing_preset() {
    ScenarioConfig cfg;
    cfg.maneuver = Maneuver::Landing;
    cfg.pitch_profile = {-0.15, 1.5, 11.0};
    cfg.initial = {};
    cfg.initial.u = 5.16;
    cfg.initial.h = -50.0;
    // Hold V_TD until the aircraft is on the runway, then decelerate.
    cfg.ramp = {{5.0, 5.0}, {38.0, 0.0}};
    cfg.t_max = 60.0;
    // Pitch stays near -0.145 rad, so glide and roll-out both need T < 0.
    cfg.thrust_clamp = false;
    return cfg;
}

ScenarioConfig preset(Maneuver maneuver) {
    return maneuver == Maneuver::TakeOff ? takeoff_preset() : landing_preset();
}

ScenarioConfig parse_config_text(std::string_view text, std::optional<Maneuver> forced) {
    const auto entries = tokenize(text);

    Maneuver maneuver = forced.value_or(Maneuver::TakeOff);
    for (const auto& e : entries) {
        if (e.section == "sim" && e.key == "maneuver") {
            try {
                const auto declared = parse_maneuver(e.value);
                if (forced && *forced != declared) {
                    throw ConfigError("maneuver '" + e.value + "' conflicts with the subcommand");
                }
                maneuver = declared;
            } catch (const ConfigError& err) {
                throw ConfigError("line " + std::to_string(e.line) + ": " + err.what());
            }
        }
    }

    ScenarioConfig cfg = preset(maneuver);
    for (const auto& e : entries) {
        const auto where = "line " + std::to_string(e.line) + ": ";
        const auto& table = setters();
        const auto it = table.find(e.section + "." + e.key);
        if (it == table.end()) {
            throw ConfigError(where + "unknown key '" + e.key + "' in [" + e.section + "]");
        }
        try {
            it->second(cfg, e.value);
        } catch (const ConfigError& err) {
            throw ConfigError(where + err.what());
        }
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
    return cfg;
}

ScenarioConfig parse_config(const std::string& path, std::optional<Maneuver> forced) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config_text(buffer.str(), forced);
    } catch (const ConfigError& err) {
        throw ConfigError(path + ": " + err.what());
    }
}

void set_parameter(ScenarioConfig& cfg, std::string_view name, std::string_view value) {
    find_setter(name)(cfg, value);
}

std::vector<std::string> parameter_names() {
    std::vector<std::string> names;
    for (const auto& [name, setter] : setters()) {
        names.push_back(name);
    }
    return names;
}

} // namespace tolsim
