#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

namespace ptsusy::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw InvalidConfig(std::string(key),
                        fmt::format("'{}' is not a finite number", text));
  }
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidConfig(std::string(key),
                        fmt::format("'{}' is not an integer", text));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "1" || text == "true" || text == "yes" || text == "on") {
    return true;
  }
  if (text == "0" || text == "false" || text == "no" || text == "off") {
    return false;
  }
  throw InvalidConfig(std::string(key),
                      fmt::format("'{}' is not a boolean", text));
}

template <class Parse>
auto parse_list(std::string_view key, std::string_view text, Parse parse) {
  std::vector<decltype(parse(key, text))> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start));
    if (item.empty()) {
      throw InvalidConfig(std::string(key), "empty list entry");
    }
    out.push_back(parse(key, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int RunConfig::finest_grid() const {
  return grid_sizes.empty()
             ? 0
             : *std::max_element(grid_sizes.begin(), grid_sizes.end());
}

std::string_view to_string(OutputFormat f) noexcept {
  return f == OutputFormat::CSV ? "csv" : "json";
}

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::Figures: return "figures";
    case Command::Spectrum: return "spectrum";
    case Command::Verify: return "verify";
    case Command::Scatter: return "scatter";
  }
  return "?";
}

void apply_setting(RunConfig& c, std::string_view key,
                   std::string_view value) {
  const std::string k(trim(key));
  value = trim(value);
  try {
    if (k == "family") {
      c.family = parse_family(value);
    } else if (k == "which") {
      c.which = parse_partner(value);
    } else if (k == "k") {
      c.k = parse_double(k, value);
    } else if (k == "q") {
      c.q = parse_double(k, value);
    } else if (k == "alpha") {
      c.alpha = parse_double(k, value);
    } else if (k == "x_min") {
      c.x_min = parse_double(k, value);
    } else if (k == "x_max") {
      c.x_max = parse_double(k, value);
    } else if (k == "epsilon") {
      c.epsilon = parse_double(k, value);
    } else if (k == "grid") {
      c.grid_sizes = parse_list(k, value, parse_int);
    } else if (k == "count") {
      c.count = parse_int(k, value);
    } else if (k == "out") {
      if (value.empty()) throw InvalidConfig(k, "output directory is empty");
      c.out_dir = std::string(value);
    } else if (k == "format") {
      if (value == "csv" || value == "CSV") {
        c.format = OutputFormat::CSV;
      } else if (value == "json" || value == "JSON") {
        c.format = OutputFormat::JSON;
      } else {
        throw InvalidConfig(k, fmt::format("'{}' is not csv or json", value));
      }
    } else if (k == "preset") {
      if (value == "plane") {
        c.preset = ScatterPreset::PlanePartner;
      } else if (value == "barrier") {
        c.preset = ScatterPreset::Barrier;
      } else {
        throw InvalidConfig(k,
                            fmt::format("'{}' is not plane or barrier", value));
      }
    } else if (k == "barrier_height") {
      c.barrier_height = parse_double(k, value);
    } else if (k == "barrier_width") {
      c.barrier_width = parse_double(k, value);
    } else if (k == "energies") {
      c.energies = parse_list(k, value, parse_double);
    } else if (k == "negative_control") {
      c.negative_control = parse_bool(k, value);
    } else {
      throw InvalidConfig(k, "unknown setting");
    }
  } catch (const InvalidArgument& e) {
    throw InvalidConfig(k, e.what());
  }
}

void apply_config_text(RunConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? std::string_view::npos
                                            : nl - start);
    start = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidConfig(fmt::format("line {}", line_no),
                          fmt::format("expected key=value, got '{}'", line));
    }
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidConfig("config", fmt::format("cannot read '{}'", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(config, buffer.str());
}

void validate(const RunConfig& c, Command command) {
  if (!(c.k > 0.0)) throw InvalidConfig("k", "must be positive");
  if (c.alpha < 0.0) throw InvalidConfig("alpha", "must be positive");
  if (c.x_min && c.x_max && !(*c.x_min < *c.x_max)) {
    throw InvalidConfig("x_min", "must be below x_max");
  }
  if (!(c.epsilon > 0.0) ||
      c.epsilon >= 0.25 * std::numbers::pi / c.effective_alpha()) {
    throw InvalidConfig("epsilon", "must lie in (0, pi/(4 alpha))");
  }
  if (c.grid_sizes.empty()) throw InvalidConfig("grid", "no grid sizes");
  for (int n : c.grid_sizes) {
    if (n < 16) {
      throw InvalidConfig("grid",
                          fmt::format("{} interior points is below 16", n));
    }
  }
  if (c.count < 1 || c.count > *std::min_element(c.grid_sizes.begin(),
                                                 c.grid_sizes.end())) {
    throw InvalidConfig("count", "must lie in [1, smallest grid size]");
  }
  switch (command) {
    case Command::Figures:
    case Command::Spectrum:
      if (!is_well(c.family)) {
        throw InvalidConfig("family", fmt::format("{} needs a well family",
                                                  to_string(command)));
      }
      break;
    case Command::Scatter:
      if (c.preset == ScatterPreset::PlanePartner && !is_plane(c.family)) {
        throw InvalidConfig(
            "family", "scatter needs a plane family or preset=barrier");
      }
      if (c.preset == ScatterPreset::Barrier && !(c.barrier_width > 0.0)) {
        throw InvalidConfig("barrier_width", "must be positive");
      }
      for (double e : c.energies) {
        if (!(e > 0.0)) {
          throw InvalidConfig("energies", "every energy must be positive");
        }
      }
      break;
    case Command::Verify:
      break;
  }
}

}  // namespace ptsusy::cli
