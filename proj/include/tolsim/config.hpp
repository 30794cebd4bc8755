// Scenario presets and the INI-style scenario file format.
//
//   [aircraft]      m S rho C_L_max mu g C_L0 C_L_alpha C_D0 k_induced aero_mode
//   [gains]         k_T k_theta k_q speed_gain_scale
//   [saturation]    L M
//   [pitch_profile] theta_lim c d
//   [initial]       u w theta q h
//   [sim]           maneuver dt t_max contact_mode thrust_clamp ramp hold
//
// Missing keys keep the preset value for the selected maneuver. Unknown
// sections or keys are rejected.
#pragma once

#include "tolsim/simulator.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tolsim {

[[nodiscard]] ScenarioConfig takeoff_preset();
[[nodiscard]] ScenarioConfig landing_preset();
[[nodiscard]] ScenarioConfig preset(Maneuver maneuver);

/// Parse scenario text. `forced` overrides (and must agree with) [sim] maneuver.
[[nodiscard]] ScenarioConfig parse_config_text(std::string_view text,
                                               std::optional<Maneuver> forced = std::nullopt);

/// Throws ConfigError if the file cannot be read or fails to parse.
[[nodiscard]] ScenarioConfig parse_config(const std::string& path,
                                          std::optional<Maneuver> forced = std::nullopt);

/// Set one parameter by `key` or `section.key`, using the file syntax for the
/// value. Used by parameter sweeps.
void set_parameter(ScenarioConfig& cfg, std::string_view name, std::string_view value);

/// Every accepted key as `section.key`.
[[nodiscard]] std::vector<std::string> parameter_names();

} // namespace tolsim
