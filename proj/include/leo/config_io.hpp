#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leo/config.hpp"

namespace leo {

enum class Scale { desk, full };

std::string_view to_string(Scale scale);
Scale parse_scale(std::string_view text);  // throws ConfigError
ScenarioConfig defaults_for(Scale scale);

using Override = std::pair<std::string, std::string>;

// Sets one field from its textual form. Throws ConfigError for unknown keys
// or malformed values.
void apply_override(ScenarioConfig& config, std::string_view key, std::string_view value);

// Parses `key = value` lines, optionally grouped under `[section]` headers,
// with `#` or `;` comments. Errors carry the 1-based line number. The result
// is not validated.
ScenarioConfig parse_config_text(std::string_view text, ScenarioConfig base = {});
ScenarioConfig load_config_file(const std::filesystem::path& path, ScenarioConfig base = {});

// Scale defaults, then the file (if any), then overrides in order; the merged
// config is validated.
ScenarioConfig resolve_config(Scale scale, const std::optional<std::filesystem::path>& file,
                              const std::vector<Override>& overrides);

std::vector<std::string> config_keys();
void write_config(std::ostream& out, const ScenarioConfig& config);

}  // namespace leo
