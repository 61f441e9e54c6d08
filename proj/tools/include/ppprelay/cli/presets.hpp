#pragma once

#include <string_view>
#include <vector>

#include "ppprelay/cli/config.hpp"

namespace ppprelay::cli {

std::vector<std::string_view> preset_names();

/// Overwrites the fields a figure preset fixes. Throws ConfigurationError
/// on an unknown name.
void apply_preset(std::string_view name, ExperimentConfig& config);

}  // namespace ppprelay::cli
