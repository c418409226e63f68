#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "run_config.hpp"

using namespace ptsusy::cli;

int main(int argc, char** argv) {
  CLI::App app{"PT-symmetric SUSY square well / barrier toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  // Flag overrides are collected as key=value pairs and applied after the
  // config file, in command-line order.
  std::vector<std::pair<std::string, std::string>> overrides;

  auto add_override = [&](CLI::App* sub, const std::string& flag,
                          const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>(
        flag, [&overrides, key](const std::string& v) {
          overrides.emplace_back(key, v);
        },
        help);
  };

  const std::pair<Command, const char*> commands[] = {
      {Command::Figures, "write fig1/fig2 partner potential tables"},
      {Command::Spectrum, "finite-difference spectra of V1 and V2"},
      {Command::Verify, "run the physics self-checks"},
      {Command::Scatter, "transmission/reflection sweep"},
  };
  std::optional<Command> chosen;
  for (const auto& [command, help] : commands) {
    CLI::App* sub = app.add_subcommand(std::string(to_string(command)), help);
    sub->add_option("--config", config_path, "key=value configuration file");
    add_override(sub, "--family", "family", "cot|tan|right|left");
    add_override(sub, "--k", "k", "wave number k > 0");
    add_override(sub, "--q", "q", "non-Hermiticity strength");
    add_override(sub, "--alpha", "alpha", "shape-invariance step (default k)");
    add_override(sub, "--epsilon", "epsilon", "endpoint truncation");
    add_override(sub, "--grid", "grid", "comma list of interior grid sizes");
    add_override(sub, "--count", "count", "number of eigenvalues");
    add_override(sub, "--out", "out", "output directory");
    add_override(sub, "--format", "format", "csv|json");
    add_override(sub, "--x-min", "x_min", "left end of the domain");
    add_override(sub, "--x-max", "x_max", "right end of the domain");
    add_override(sub, "--which", "which", "V1|V2 (scatter)");
    add_override(sub, "--preset", "preset", "plane|barrier (scatter)");
    add_override(sub, "--barrier-height", "barrier_height", "V0 (scatter)");
    add_override(sub, "--barrier-width", "barrier_width", "width (scatter)");
    add_override(sub, "--energies", "energies", "comma list of energies");
    add_override(sub, "--negative-control", "negative_control",
                 "true|false: use the wrong constraint (verify)");
    sub->callback([&chosen, command] { chosen = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalidConfig;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) apply_config_file(config, config_path);
    for (const auto& [key, value] : overrides) apply_setting(config, key, value);
  } catch (const InvalidConfig& e) {
    fmt::print(stderr, "invalid config: {}\n", e.what());
    return kExitInvalidConfig;
  }

  const CommandOutput output = run_command(*chosen, config);
  std::FILE* stream = output.exit_code <= kExitPhysicsFailure ? stdout : stderr;
  fmt::print(stream, "{}", output.summary);
  std::string error;
  if (!write_outputs(output, config.out_dir, error)) {
    fmt::print(stderr, "{}\n", error);
    return kExitInvalidConfig;
  }
  return output.exit_code;
}
