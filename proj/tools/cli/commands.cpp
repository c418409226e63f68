#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ptsusy/ptsusy.hpp"

namespace ptsusy::cli {

namespace {

using std::numbers::pi;
using nlohmann::json;

// +0.0 folds negative zero so "-0" never appears in tables.
std::string num(double v) { return fmt::format("{:.17g}", v + 0.0); }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const double step = (b - a) / (n - 1);
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = a + j * step;
  out.back() = b;
  return out;
}

std::vector<double> geomspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const double ratio = std::log(b / a) / (n - 1);
  for (int j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] = a * std::exp(ratio * j);
  }
  out.back() = b;
  return out;
}

// Tabular output in the configured format. JSON keeps the column order in
// a separate array because object keys are sorted.
std::string render_table(OutputFormat format,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<double>>& rows) {
  if (format == OutputFormat::JSON) {
    json j;
    j["columns"] = columns;
    j["rows"] = rows;
    return j.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out += (c ? "," : "") + columns[c];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += (c ? "," : "") + num(row[c]);
    }
    out += "\n";
  }
  return out;
}

std::string extension(OutputFormat f) {
  return f == OutputFormat::CSV ? ".csv" : ".json";
}

Domain well_domain(const RunConfig& c) {
  const Domain cell = fundamental_cell(c.family, c.k);
  return Domain::make(c.x_min.value_or(cell.x_min),
                      c.x_max.value_or(cell.x_max), DomainKind::Box);
}

// --- verify -------------------------------------------------------------

struct Check {
  std::string name;
  bool gating = true;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

json to_json(const Check& c) {
  return json{{"name", c.name},   {"gating", c.gating},
              {"passed", c.passed}, {"value", c.value},
              {"tolerance", c.tolerance}, {"detail", c.detail}};
}

std::vector<double> remainder_samples(Family family, double k) {
  switch (family) {
    case Family::CotangentWell:
      return linspace(0.05 / k, (pi - 0.05) / k, 1000);
    case Family::TangentWell:
      return linspace((-pi / 2 + 0.05) / k, (pi / 2 - 0.05) / k, 1000);
    case Family::PlaneRight:
    case Family::PlaneLeft:
      break;
  }
  return linspace(-pi / k, pi / k, 1000);
}

constexpr Family kFamilies[] = {Family::CotangentWell, Family::TangentWell,
                                Family::PlaneRight, Family::PlaneLeft};

void shape_invariance_checks(const RunConfig& config,
                             std::vector<Check>& checks) {
  double worst_dev = 0.0;
  double worst_mean = 0.0;
  std::string where;
  for (Family f : kFamilies) {
    for (double q : {0.0, 1.0, 2.0, 5.0}) {
      for (double k : {1.0, 2.0, 3.0}) {
        SuperpotentialSpec spec = SuperpotentialSpec::make(f, k, q);
        if (config.negative_control) spec = spec.perturbed(2.0);
        const auto samples = remainder_samples(f, k);
        const ShapeInvarianceResult r = check_shape_invariance(spec, samples);
        const double mean_err = std::abs(r.mean - Complex{3.0 * k * k, 0.0});
        if (r.max_abs_deviation > worst_dev || mean_err > worst_mean) {
          where = fmt::format("{} q={} k={}", to_string(f), q, k);
        }
        worst_dev = std::max(worst_dev, r.max_abs_deviation);
        worst_mean = std::max(worst_mean, mean_err);
      }
    }
  }
  checks.push_back({"shape_invariance_deviation", true, worst_dev < 1e-10,
                    worst_dev, 1e-10, "worst at " + where});
  checks.push_back({"shape_invariance_mean_3k2", true, worst_mean < 1e-10,
                    worst_mean, 1e-10, "|mean R1 - 3k^2|, worst case"});

  // The wrong constraint must be detected.
  const SuperpotentialSpec wrong =
      SuperpotentialSpec::make(Family::CotangentWell, 1.0, 2.0).perturbed(2.0);
  const auto samples = linspace(0.05, pi / 2 - 0.05, 1000);
  const ShapeInvarianceResult r = check_shape_invariance(wrong, samples);
  checks.push_back({"shape_invariance_negative_control", true,
                    r.max_abs_deviation > 1e3 * r.tolerance,
                    r.max_abs_deviation, 1e3 * r.tolerance,
                    "f = q csc(2 alpha x) must break shape invariance"});
}

void residual_checks(std::vector<Check>& checks) {
  double worst = 0.0;
  double worst_order_gap = 0.0;
  double min_order = 10.0;
  for (Family f : kFamilies) {
    for (double q : {0.0, 1.0, 2.0}) {
      for (double k : {1.0, 2.0}) {
        const WaveFunctionSpec psi{f, k, q};
        const double x = f == Family::CotangentWell ? 1.0 / k : 0.5 / k;
        const ComplexField v1 =
            partner_field(psi.superpotential(), Partner::V1);
        const double coarse =
            std::abs(schrodinger_residual(v1, psi, 0.0, x, 1e-3));
        const double fine =
            std::abs(schrodinger_residual(v1, psi, 0.0, x, 1e-4));
        worst = std::max(worst, fine);
        const double order = std::log10(coarse / fine);
        min_order = std::min(min_order, order);
        worst_order_gap = std::max(worst_order_gap, std::abs(order - 2.0));
      }
    }
  }
  checks.push_back({"ground_state_residual", true, worst < 1e-6, worst, 1e-6,
                    "max |H1 psi0| / |psi0| at h = 1e-4"});
  checks.push_back({"ground_state_residual_order", true,
                    worst_order_gap <= 0.3, min_order, 0.3,
                    "log10 ratio between h = 1e-3 and 1e-4 (expect 2)"});
}

void density_checks(std::vector<Check>& checks) {
  double worst = 0.0;
  for (Family f : {Family::CotangentWell, Family::TangentWell}) {
    const Domain cell = fundamental_cell(f, 1.0);
    const double step = cell.length() / 2001.0;
    for (double q : {1.0, 2.0, 5.0}) {
      const WaveFunctionSpec psi{f, 1.0, q};
      const WaveFunctionSpec real{f, 1.0, 0.0};
      for (int j = 1; j <= 2000; ++j) {
        const double x = cell.x_min + j * step;
        worst = std::max(worst, std::abs(probability_density(psi, x) -
                                         probability_density(real, x)));
      }
    }
  }
  checks.push_back({"density_equality", true, worst < 1e-12, worst, 1e-12,
                    "max | |psi_q|^2 - |psi_0|^2 | over 2000 points"});
}

void pt_checks(std::vector<Check>& checks) {
  const auto samples = linspace(0.1 * pi, 0.9 * pi, 500);
  double worst = 0.0;
  for (double q : {1.0, 2.0}) {
    const auto spec = SuperpotentialSpec::make(Family::CotangentWell, 1.0, q);
    for (Partner p : {Partner::V1, Partner::V2}) {
      worst = std::max(worst,
                       pt_asymmetry(partner_field(spec, p), pi / 2, samples));
    }
  }
  checks.push_back({"pt_symmetry_cotangent_well", true, worst < 1e-12, worst,
                    1e-12, "partners about pi/2, k=1, q in {1,2}"});

  const auto tan_samples = linspace(-0.4 * pi, 0.4 * pi, 500);
  double tan_worst = 0.0;
  for (double q : {1.0, 2.0}) {
    const auto spec = SuperpotentialSpec::make(Family::TangentWell, 1.0, q);
    for (Partner p : {Partner::V1, Partner::V2}) {
      tan_worst = std::max(
          tan_worst, pt_asymmetry(partner_field(spec, p), 0.0, tan_samples));
    }
  }
  checks.push_back({"pt_symmetry_tangent_well", true, tan_worst < 1e-12,
                    tan_worst, 1e-12, "partners about 0, k=1, q in {1,2}"});

  const auto plane = SuperpotentialSpec::make(Family::PlaneRight, 1.0, 1.0);
  const double plane_asym = pt_asymmetry(partner_field(plane, Partner::V1),
                                         0.0, linspace(-2.0, 2.0, 500));
  checks.push_back({"pt_asymmetry_plane_right", false, true, plane_asym, 0.0,
                    "reported only: V1 PlaneRight k=1 q=1 about 0"});
}

void isospectral_checks(const RunConfig& config, std::vector<Check>& checks) {
  const int n = config.finest_grid();
  const auto spec = SuperpotentialSpec::make(Family::CotangentWell, 1.0, 0.0);
  const Grid1D grid = Grid1D::make(0.0, pi, n);
  const SpectrumReport v1 =
      eigenvalues(discretize(partner_field(spec, Partner::V1), grid), 5);
  const SpectrumReport v2 =
      eigenvalues(discretize(partner_field(spec, Partner::V2), grid), 4);
  const IsospectralResult iso = isospectral_check(v1, v2, 1, 1e-4);
  checks.push_back({"susy_isospectrality", true, iso.passed, iso.max_error,
                    1e-4,
                    fmt::format("V2 vs V1 shifted one level, q=0, n={}, {} "
                                "levels",
                                n, iso.matched)});
}

void flux_checks(std::vector<Check>& checks) {
  double worst = 0.0;
  for (double v0 : {4.0, -5.0}) {
    const PiecewisePotential barrier =
        PiecewisePotential::square(0.0, 1.0, Complex{v0, 0.0});
    for (double factor : {0.1, 0.5, 2.0, 5.0, 10.0}) {
      const double e = factor * std::abs(v0);
      worst = std::max(worst, std::abs(transmission_reflection(barrier, e)
                                           .flux_defect));
    }
  }
  checks.push_back({"flux_conservation_real_barriers", true, worst <= 1e-10,
                    worst, 1e-10, "|R + T - 1|, V0 in {4, -5}, width 1"});
}

}  // namespace

std::vector<double> figure_abscissae(const RunConfig& config) {
  const double a = config.x_min.value_or(0.0);
  const double b = config.x_max.value_or(pi / config.k);
  return linspace(a + config.epsilon, b - config.epsilon, kFigurePoints);
}

namespace {

Complex sample(const SuperpotentialSpec& spec, Partner which, double x,
               bool strict) {
  if (strict) return eval_partner(spec, which, x);
  try {
    return eval_partner(spec, which, x);
  } catch (const SingularPoint&) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
}

FigureRow make_row(const RunConfig& config, Partner which, double x,
                   bool strict) {
  const double alpha = config.effective_alpha();
  const auto cot =
      SuperpotentialSpec::make(Family::CotangentWell, config.k, config.q, alpha);
  const auto tan =
      SuperpotentialSpec::make(Family::TangentWell, config.k, config.q, alpha);
  const auto cot0 =
      SuperpotentialSpec::make(Family::CotangentWell, config.k, 0.0, alpha);
  const auto tan0 =
      SuperpotentialSpec::make(Family::TangentWell, config.k, 0.0, alpha);
  return FigureRow{x, sample(cot, which, x, strict),
                   sample(tan, which, x, strict),
                   sample(cot0, which, x, strict).real(),
                   sample(tan0, which, x, strict).real()};
}

}  // namespace

FigureRow figure_row(const RunConfig& config, Partner which, double x) {
  return make_row(config, which, x, false);
}

CommandOutput cmd_figures(const RunConfig& config) {
  CommandOutput out;
  const auto xs = figure_abscissae(config);
  int figure = 1;
  for (Partner which : {Partner::V1, Partner::V2}) {
    const std::string p(to_string(which));
    const std::vector<std::string> columns = {
        "x",          p + "_c_re", p + "_c_im", p + "_t_re",
        p + "_t_im",  p + "_c_q0", p + "_t_q0"};
    std::vector<std::vector<double>> rows;
    rows.reserve(xs.size());
    for (double x : xs) {
      const FigureRow r = make_row(config, which, x, true);
      rows.push_back({r.x, r.cot.real(), r.cot.imag(), r.tan.real(),
                      r.tan.imag(), r.cot_baseline, r.tan_baseline});
    }
    out.files.push_back({fmt::format("fig{}{}", figure, extension(config.format)),
                         render_table(config.format, columns, rows)});
    ++figure;
  }
  out.summary = fmt::format(
      "wrote fig1/fig2 ({} points on [{:.6g}, {:.6g}], k={}, q={})\n",
      xs.size(), xs.front(), xs.back(), config.k, config.q);
  return out;
}

CommandOutput cmd_spectrum(const RunConfig& config) {
  CommandOutput out;
  const Domain domain = well_domain(config);
  const double alpha = config.effective_alpha();
  const auto spec =
      SuperpotentialSpec::make(config.family, config.k, config.q, alpha);
  const ComplexField v1 = partner_field(spec, Partner::V1);
  const ComplexField v2 = partner_field(spec, Partner::V2);

  if (config.q == 0.0 && alpha == config.k) {
    const SpectrumReport r1 = converged_spectrum(
        v1, domain.x_min, domain.x_max, config.grid_sizes, config.count);
    const SpectrumReport r2 = converged_spectrum(
        v2, domain.x_min, domain.x_max, config.grid_sizes, config.count);
    out.files.push_back({"spectrum_V1.json", to_json(r1) + "\n"});
    out.files.push_back({"spectrum_V2.json", to_json(r2) + "\n"});

    const bool extrapolated = !r1.richardson_estimates.empty();
    const bool richardson_gate = config.grid_sizes.size() >= 3;
    bool ok = true;
    std::string& s = out.summary;
    s += fmt::format("{} k={} q=0 on [{:.6g}, {:.6g}], grids:",
                     to_string(config.family), config.k, domain.x_min,
                     domain.x_max);
    for (int n : r1.grid_sizes_used) s += fmt::format(" {}", n);
    s += fmt::format("\n{:>5} {:>20} {:>20} {:>12} {:>20}\n", "level",
                     "V1 raw", "V1 extrapolated", "exact", "V2 (level-1)");
    for (int n = 0; n < config.count; ++n) {
      const auto idx = static_cast<std::size_t>(n);
      const double exact = config.k * config.k * well_spectrum_analytic(n);
      const double raw = r1.eigenvalues[idx].real();
      const double ext = extrapolated ? r1.richardson_estimates[idx] : raw;
      ok = ok && std::abs(raw - exact) < 1e-3;
      if (richardson_gate) ok = ok && std::abs(ext - exact) < 1e-6;
      const std::string partner =
          n >= 1 ? fmt::format("{:20.12f}", r2.eigenvalues[idx - 1].real())
                 : fmt::format("{:>20}", "-");
      s += fmt::format("{:>5} {:20.12f} {:20.12f} {:12g} {}\n", n, raw, ext,
                       exact, partner);
    }
    const IsospectralResult iso = isospectral_check(r1, r2, 1, 1e-4);
    ok = ok && iso.passed;
    s += fmt::format("isospectral V1/V2 (shift 1): max error {:.3e} over {} "
                     "levels\n",
                     iso.max_error, iso.matched);
    s += ok ? "all gating comparisons passed\n"
            : "GATING COMPARISON FAILED\n";
    out.exit_code = ok ? kExitOk : kExitPhysicsFailure;
    return out;
  }

  // Complex partners: endpoint-truncated, exploratory, never gating.
  json summary = json::array();
  std::string& s = out.summary;
  s += fmt::format("exploratory: {} k={} q={} alpha={} (Dirichlet at "
                   "truncated ends)\n",
                   to_string(config.family), config.k, config.q, alpha);
  s += fmt::format("{:>8} {:>4} {:>6} {:>14} {:>12} {:>26}\n", "eps",
                   "pot", "n", "max_imag", "phase", "lowest eigenvalue");
  std::vector<int> sizes = config.grid_sizes;
  std::sort(sizes.begin(), sizes.end());
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    for (Partner which : {Partner::V1, Partner::V2}) {
      const ComplexField& field = which == Partner::V1 ? v1 : v2;
      std::vector<SpectrumReport> reports;
      std::vector<double> spacings;
      for (int n : sizes) {
        const Grid1D grid =
            Grid1D::make(domain.x_min + eps, domain.x_max - eps, n);
        json entry{{"epsilon", eps},
                   {"partner", std::string(to_string(which))},
                   {"grid", n}};
        try {
          SpectrumReport r = eigenvalues(discretize(field, grid), config.count);
          const PtPhase phase = reality_classification(r);
          entry["max_imag"] = r.max_imag;
          entry["classification"] = std::string(to_string(phase));
          s += fmt::format("{:8.0e} {:>4} {:6} {:14.6e} {:>12} {:>12.6g}{:+.4g}i\n",
                           eps, to_string(which), n, r.max_imag,
                           to_string(phase), r.eigenvalues[0].real(),
                           r.eigenvalues[0].imag());
          reports.push_back(std::move(r));
          spacings.push_back(grid.spacing());
        } catch (const ConvergenceFailure& e) {
          entry["error"] = e.what();
          s += fmt::format("{:8.0e} {:>4} {:6} convergence failure: {}\n",
                           eps, to_string(which), n, e.what());
        }
        summary.push_back(std::move(entry));
      }
      if (reports.empty()) continue;
      SpectrumReport finest = reports.back();
      finest.grid_sizes_used.clear();
      for (const auto& r : reports) {
        finest.grid_sizes_used.push_back(r.grid_sizes_used.front());
      }
      if (reports.size() > 1) {
        for (int level = 0; level < config.count; ++level) {
          std::vector<double> values;
          for (const auto& r : reports) {
            values.push_back(r.eigenvalues[static_cast<std::size_t>(level)].real());
          }
          finest.richardson_estimates.push_back(
              richardson_extrapolate(spacings, values));
        }
      }
      out.files.push_back(
          {fmt::format("spectrum_{}_eps{:.0e}.json", to_string(which), eps),
           to_json(finest) + "\n"});
    }
  }
  out.files.push_back({"exploratory.json", summary.dump(2) + "\n"});
  s += "exploratory mode: results recorded, not gated\n";
  out.exit_code = kExitOk;
  return out;
}

CommandOutput cmd_verify(const RunConfig& config) {
  std::vector<Check> checks;
  shape_invariance_checks(config, checks);
  residual_checks(checks);
  density_checks(checks);
  pt_checks(checks);
  isospectral_checks(config, checks);
  flux_checks(checks);

  CommandOutput out;
  bool all = true;
  json list = json::array();
  for (const Check& c : checks) {
    if (c.gating) all = all && c.passed;
    list.push_back(to_json(c));
    out.summary += fmt::format("[{}] {:<36} value={:.3e} tol={:.1e}{}\n",
                               !c.gating ? "INFO" : (c.passed ? "PASS" : "FAIL"),
                               c.name, c.value, c.tolerance,
                               c.gating ? "" : " (non-gating)");
  }
  json report{{"checks", std::move(list)}, {"passed", all}};
  out.files.push_back({"verify.json", report.dump(2) + "\n"});
  out.exit_code = all ? kExitOk : kExitPhysicsFailure;
  return out;
}

CommandOutput cmd_scatter(const RunConfig& config) {
  CommandOutput out;
  std::vector<ScatteringResult> results;
  if (config.preset == ScatterPreset::Barrier) {
    const double v0 = config.barrier_height;
    const double scale = v0 != 0.0 ? std::abs(v0) : 1.0;
    const std::vector<double> energies =
        config.energies.empty() ? geomspace(0.1 * scale, 20.0 * scale, 40)
                                : config.energies;
    const PiecewisePotential barrier = PiecewisePotential::square(
        0.0, config.barrier_width, Complex{v0, 0.0});
    for (double e : energies) {
      results.push_back(transmission_reflection(barrier, e));
    }
    out.summary = fmt::format(
        "square barrier V0={} width={}: {} energies\n", v0,
        config.barrier_width, results.size());
  } else {
    const auto spec = SuperpotentialSpec::make(
        config.family, config.k, config.q, config.effective_alpha());
    const double x_a = config.x_min.value_or(0.0);
    const double x_b = config.x_max.value_or(2.0 * pi / config.k);
    const double kk = config.k * config.k;
    const std::vector<double> energies =
        config.energies.empty() ? geomspace(0.1 * kk, 10.0 * kk, 25)
                                : config.energies;
    results = plane_partner_sweep(spec, config.which, x_a, x_b, energies);
    out.summary = fmt::format(
        "{} {} k={} q={} on [{:.6g}, {:.6g}]: {} energies\n",
        to_string(config.family), to_string(config.which), config.k, config.q,
        x_a, x_b, results.size());
  }
  double worst = 0.0;
  for (const auto& r : results) worst = std::max(worst, std::abs(r.flux_defect));
  out.summary += fmt::format("max |R + T - 1| = {:.3e}\n", worst);

  if (config.format == OutputFormat::CSV) {
    out.files.push_back({"scatter.csv", to_csv(results)});
  } else {
    std::vector<std::vector<double>> rows;
    for (const auto& r : results) {
      rows.push_back({r.energy, r.r.real(), r.r.imag(), r.t.real(),
                      r.t.imag(), r.reflectance(), r.transmittance(),
                      r.flux_defect});
    }
    out.files.push_back(
        {"scatter.json",
         render_table(OutputFormat::JSON,
                      {"energy", "re_r", "im_r", "re_t", "im_t", "R", "T",
                       "flux_defect"},
                      rows)});
  }
  return out;
}

CommandOutput run_command(Command command, const RunConfig& config) {
  CommandOutput failed;
  try {
    validate(config, command);
    switch (command) {
      case Command::Figures: return cmd_figures(config);
      case Command::Spectrum: return cmd_spectrum(config);
      case Command::Verify: return cmd_verify(config);
      case Command::Scatter: return cmd_scatter(config);
    }
  } catch (const InvalidConfig& e) {
    failed.exit_code = kExitInvalidConfig;
    failed.summary = fmt::format("invalid config: {}\n", e.what());
  } catch (const InvalidArgument& e) {
    failed.exit_code = kExitInvalidConfig;
    failed.summary = fmt::format("invalid config: {}\n", e.what());
  } catch (const SingularPoint& e) {
    failed.exit_code = kExitInvalidConfig;
    failed.summary = fmt::format("invalid config (singular point): {}\n",
                                 e.what());
  } catch (const DomainViolation& e) {
    failed.exit_code = kExitInvalidConfig;
    failed.summary = fmt::format("invalid config (domain): {}\n", e.what());
  } catch (const Error& e) {
    // ConvergenceFailure, SliceTooCoarse, EvanescentOverflow, ...
    failed.exit_code = kExitConvergenceFailure;
    failed.summary = fmt::format("numerical failure: {}\n", e.what());
  }
  return failed;
}

bool write_outputs(const CommandOutput& output, const std::string& out_dir,
                   std::string& error) {
  if (output.files.empty()) return true;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    error = fmt::format("cannot create '{}': {}", out_dir, ec.message());
    return false;
  }
  std::vector<const OutputFile*> files;
  for (const auto& f : output.files) files.push_back(&f);
  std::sort(files.begin(), files.end(),
            [](const OutputFile* a, const OutputFile* b) {
              return a->name < b->name;
            });
  for (const OutputFile* f : files) {
    const auto path = std::filesystem::path(out_dir) / f->name;
    std::ofstream stream(path, std::ios::binary | std::ios::trunc);
    stream << f->content;
    if (!stream) {
      error = fmt::format("cannot write '{}'", path.string());
      return false;
    }
  }
  return true;
}

}  // namespace ptsusy::cli
