#include "catqfi/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "catqfi/errors.hpp"

namespace catqfi {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string_view key) {
  std::string k(key);
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

// Strips a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

double to_double(const ConfigEntry& e) {
  double v = 0.0;
  const std::string_view t = e.value;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", e.origin, e.value));
  }
  return v;
}

bool to_bool(const ConfigEntry& e) {
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  throw ConfigError(fmt::format("{}: '{}' is not a boolean", e.origin, e.value));
}

Grid to_grid(const ConfigEntry& e) {
  try {
    return Grid::parse(e.value);
  } catch (const ConfigError& err) {
    throw ConfigError(fmt::format("{}: {}", e.origin, err.what()));
  }
}

}  // namespace

std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view source) {
  std::vector<ConfigEntry> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::string origin = fmt::format("{}:{}", source, line_no);

    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      throw ConfigError(fmt::format("{}: tables are not supported (flat key = value only)", origin));
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("{}: expected 'key = value'", origin));
    }
    const std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(fmt::format("{}: missing key", origin));
    if (!value.empty() && value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') {
        throw ConfigError(fmt::format("{}: unterminated string", origin));
      }
      value = value.substr(1, value.size() - 2);
    }
    out.push_back({normalize_key(key), std::string(value), origin});
    if (end == text.size()) break;
  }
  return out;
}

std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

void apply_setting(SweepSpec& spec, const ConfigEntry& e) {
  const std::string key = normalize_key(e.key);
  if (key == "alpha") {
    spec.alpha = to_double(e);
  } else if (key == "hhg_alpha") {
    spec.hhg_alpha = to_double(e);
  } else if (key == "delta_alpha") {
    spec.delta_alpha = to_double(e);
  } else if (key == "parity") {
    if (e.value == "even") {
      spec.parity = Parity::even;
    } else if (e.value == "odd") {
      spec.parity = Parity::odd;
    } else {
      throw ConfigError(fmt::format("{}: parity must be 'even' or 'odd', got '{}'", e.origin, e.value));
    }
  } else if (key == "mean_photon") {
    spec.mean_photon = to_double(e);
  } else if (key == "eta_grid") {
    spec.eta_grid = to_grid(e);
  } else if (key == "chi_grid") {
    spec.chi_grid = to_grid(e);
  } else if (key == "photon_grid") {
    spec.photon_grid = to_grid(e);
  } else if (key == "lo_mag") {
    spec.lo_mag = to_double(e);
  } else if (key == "lo_loss") {
    spec.lo_loss = to_bool(e);
  } else if (key == "out") {
    spec.out_path = e.value;
  } else {
    throw ConfigError(fmt::format("{}: unknown key '{}'", e.origin, e.key));
  }
}

SweepSpec parse_config(Experiment experiment, const std::optional<std::filesystem::path>& file,
                       std::span<const ConfigEntry> flags) {
  SweepSpec spec = SweepSpec::defaults(experiment);
  std::vector<ConfigEntry> entries;
  if (file) entries = read_config_file(*file);
  entries.insert(entries.end(), flags.begin(), flags.end());
  for (const auto& e : entries) apply_setting(spec, e);
  try {
    spec.validate();
  } catch (const ConfigError& err) {
    // validate() messages start with the offending key; name where it was set.
    const std::string_view msg = err.what();
    const std::string_view key = msg.substr(0, msg.find(':'));
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
      if (normalize_key(it->key) == key) throw ConfigError(fmt::format("{}: {}", it->origin, msg));
    }
    throw;
  }
  return spec;
}

}  // namespace catqfi
