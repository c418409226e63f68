#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptsusy/errors.hpp"
#include "ptsusy/types.hpp"

namespace ptsusy::cli {

enum class OutputFormat { CSV, JSON };

enum class Command { Figures, Spectrum, Verify, Scatter };

enum class ScatterPreset { PlanePartner, Barrier };

/// Exit-code contract of the ptsusy tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitPhysicsFailure = 1,
  kExitConvergenceFailure = 2,
  kExitInvalidConfig = 3,
};

class InvalidConfig : public Error {
 public:
  InvalidConfig(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  Family family = Family::CotangentWell;
  double k = 1.0;
  double q = 2.0;
  /// 0 means "same as k".
  double alpha = 0.0;
  std::optional<double> x_min;
  std::optional<double> x_max;
  /// Endpoint truncation for figure sampling.
  double epsilon = 1e-3;
  std::vector<int> grid_sizes = {1000, 2000, 4000};
  int count = 5;
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::CSV;

  ScatterPreset preset = ScatterPreset::PlanePartner;
  Partner which = Partner::V1;
  double barrier_height = 4.0;
  double barrier_width = 1.0;
  std::vector<double> energies;

  bool negative_control = false;

  double effective_alpha() const noexcept { return alpha > 0.0 ? alpha : k; }
  int finest_grid() const;
};

/// Sets one field from its textual form. Keys match the long flag names
/// without dashes (family, k, q, alpha, x_min, x_max, epsilon, grid, count,
/// out, format, preset, which, barrier_height, barrier_width, energies,
/// negative_control). Throws InvalidConfig naming the key.
void apply_setting(RunConfig& config, std::string_view key,
                   std::string_view value);

/// Flat key=value text; '#' starts a comment, blank lines are ignored.
void apply_config_text(RunConfig& config, std::string_view text);
void apply_config_file(RunConfig& config, const std::string& path);

/// Checks the configuration against the preconditions of `command`.
void validate(const RunConfig& config, Command command);

std::string_view to_string(OutputFormat f) noexcept;
std::string_view to_string(Command c) noexcept;

}  // namespace ptsusy::cli
