#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "augsel/selftrain.hpp"

namespace augsel {

/// Flat key=value configuration. Every key can also be set from the
/// environment as AUGSEL_<KEY> (upper case) and from a --<key> CLI flag with
/// underscores spelled as dashes. Precedence: defaults < file < env < flags.
struct ConfigKey {
  std::string name;
  std::string help;
};

inline constexpr std::string_view kEnvPrefix = "AUGSEL_";

const std::vector<ConfigKey>& config_keys();

/// Throws InputError for unknown keys or unparsable values.
void apply_config_value(PipelineConfig& config, std::string_view key,
                        std::string_view value);

/// Reads `key = value` lines; '#' starts a comment.
void apply_config_file(PipelineConfig& config,
                       const std::filesystem::path& path);

void apply_env_overrides(PipelineConfig& config);

/// (key, value) for every key, in config_keys() order.
std::vector<std::pair<std::string, std::string>> config_snapshot(
    const PipelineConfig& config);

}  // namespace augsel
