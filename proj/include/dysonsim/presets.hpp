#pragma once

#include <string>
#include <vector>

#include "dysonsim/config.hpp"

namespace dysonsim {

std::vector<std::string> preset_names();

// Throws ValidationError for an unknown name.
Json preset_json(const std::string& name);
ExperimentConfig preset_config(const std::string& name);

// One line per preset: name and a short description.
std::string list_presets();

} // namespace dysonsim
