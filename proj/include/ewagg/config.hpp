#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "ewagg/experiment.hpp"

namespace ewagg {

/// Parses "key = value" lines. '#' starts a comment, blank lines are
/// ignored. Throws std::invalid_argument with the line number on malformed
/// input or duplicate keys.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Recognized keys: signal, smooth, n, sigma, replications, seed, methods,
/// grid_alpha, grid_w, alpha_min, alpha_max, beta_factor, threads, out.
/// Unknown keys are an error.
ExperimentConfig config_from_key_values(const std::map<std::string, std::string>& kv,
                                        ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace ewagg
