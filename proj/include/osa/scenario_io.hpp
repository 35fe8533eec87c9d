#pragma once

#include <string>
#include <vector>

#include "osa/model.hpp"

namespace osa {

// Parses the scenario config schema:
//   { "slot_ms": 100, "switching_delay_ms": 0, "quantum_mb": 0.001,
//     "channels": [ {"id": 1, "rate_mbps": 1.5, "p": 0.9, "misdetect": 0},
//                   {"id": 2, "rate_mbps": 4.5,
//                    "q_up": 0.3, "q_down": 0.1, "c0": 0.75} ] }
// Errors name the offending field.
Scenario load_scenario_json(const std::string& text, const std::string& name = "custom");
Scenario load_scenario_file(const std::string& path);

// Built-in eight-channel presets: "gradual", "steep", "lossy".
bool is_preset(const std::string& name);
Scenario preset_scenario(const std::string& name);
std::vector<std::string> preset_names();

// Preset by name or JSON file by path.
Scenario resolve_scenario(const std::string& name_or_path);

std::string scenario_to_json(const Scenario& scenario);

}  // namespace osa
