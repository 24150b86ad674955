#pragma once

// Flat key = value configuration (a TOML subset) layered under CLI flags.
//
//   # comment
//   alpha = 10
//   eta_grid = "0:1:101"
//   lo_loss = false
//
// Keys accept '-' or '_' interchangeably. Unknown keys are errors.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catqfi/sweep.hpp"

namespace catqfi {

struct ConfigEntry {
  std::string key;
  std::string value;
  std::string origin;  // "path:line" or "--flag", used in error messages
};

/// Throws ConfigError (with path:line) on malformed lines or a missing file.
std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path);
std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view source);

/// Applies one setting; throws ConfigError mentioning `origin`.
void apply_setting(SweepSpec& spec, const ConfigEntry& entry);

/// Experiment defaults, then the config file, then flags (flags win); validated.
SweepSpec parse_config(Experiment experiment, const std::optional<std::filesystem::path>& file,
                       std::span<const ConfigEntry> flags);

}  // namespace catqfi
