#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cqed/experiments.hpp"

namespace cqed {

// Baseline parameter set. These are configuration choices at the scale of
// circular-Rydberg microwave cavity experiments, not measured values.
ExperimentConfig default_config();

// Parse the flat "key = value" format ('#' starts a comment, unknown keys
// are errors, every quantity carries documented units). Throws ConfigError
// with a line number on bad input.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(std::istream& in, const std::string& origin);

// Resolved key=value view of a config, in documented key order; parsing it
// back reproduces the config exactly.
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg);

// One line per key: name, unit, default, meaning.
std::string config_documentation();

}  // namespace cqed
