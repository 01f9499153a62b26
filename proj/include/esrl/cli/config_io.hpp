#pragma once

// Text form of ExperimentConfig: flat `key = value` lines with dotted key
// prefixes (env.*, scheme.*, padding.*, train.*, net.*, run.*). Blank lines
// and lines starting with '#' are ignored. Every key is optional — absent
// keys keep their defaults — but unknown and duplicate keys are errors, so
// typos fail loudly instead of silently training the wrong experiment.

#include <string>

#include "esrl/config.hpp"

namespace esrl::cli {

// Text names for the enums that have no canonical mapping elsewhere.
const char* to_string(env::StartMode mode);
env::StartMode parse_start_mode(const std::string& name);  // throws ConfigError
const char* to_string(pipeline::PaddingMode mode);
pipeline::PaddingMode parse_padding_mode(const std::string& name);

/// Parses config text. Throws ConfigError naming the offending line or key.
ExperimentConfig parse_config_text(const std::string& text);

/// Reads and parses a config file; DataError if the file cannot be read.
ExperimentConfig load_config_file(const std::string& path);

/// Canonical text form listing every key; parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace esrl::cli
