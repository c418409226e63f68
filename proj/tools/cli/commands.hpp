#pragma once

#include <string>
#include <vector>

#include "ptsusy/types.hpp"
#include "run_config.hpp"

namespace ptsusy::cli {

struct OutputFile {
  std::string name;
  std::string content;
};

/// Everything a command produces. Files are written once, after the
/// command has finished, by write_outputs.
struct CommandOutput {
  int exit_code = kExitOk;
  std::vector<OutputFile> files;
  std::string summary;
};

inline constexpr int kFigurePoints = 1000;

/// One row of fig1 (V1) or fig2 (V2): both well families at the configured
/// (k, q) plus their q = 0 baselines.
struct FigureRow {
  double x = 0.0;
  Complex cot;
  Complex tan;
  double cot_baseline = 0.0;
  double tan_baseline = 0.0;
};

std::vector<double> figure_abscissae(const RunConfig& config);
/// Any point, including poles of one family: that family's columns are NaN
/// (the table itself refuses singular abscissae).
FigureRow figure_row(const RunConfig& config, Partner which, double x);

CommandOutput cmd_figures(const RunConfig& config);
CommandOutput cmd_spectrum(const RunConfig& config);
CommandOutput cmd_verify(const RunConfig& config);
CommandOutput cmd_scatter(const RunConfig& config);

/// Validates, dispatches and maps failures onto the exit-code contract.
/// Never throws for domain errors.
CommandOutput run_command(Command command, const RunConfig& config);

/// Writes files into config.out_dir (created if missing). Returns false and
/// fills `error` when a file cannot be written.
bool write_outputs(const CommandOutput& output, const std::string& out_dir,
                   std::string& error);

}  // namespace ptsusy::cli
