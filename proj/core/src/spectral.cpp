#include "ptsusy/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ptsusy/errors.hpp"
#include "ptsusy/tridiagonal.hpp"

namespace ptsusy {

namespace {

bool by_real_then_imag(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void require_count(const DiscretizedHamiltonian& h, int count) {
  if (count < 1 || count > h.grid.n_interior) {
    throw InvalidArgument(fmt::format(
        "eigenvalue count {} outside [1, {}]", count, h.grid.n_interior));
  }
  if (h.diagonal.size() != static_cast<std::size_t>(h.grid.n_interior)) {
    throw InvalidArgument("Hamiltonian diagonal does not match its grid");
  }
}

SpectrumReport finish(const DiscretizedHamiltonian& h,
                      std::vector<Complex> all, int count) {
  std::sort(all.begin(), all.end(), by_real_then_imag);
  all.resize(static_cast<std::size_t>(count));

  const std::vector<Complex> off(h.diagonal.size() - 1,
                                 Complex{h.off_diagonal, 0.0});
  SpectrumReport report;
  report.grid_sizes_used = {h.grid.n_interior};
  for (const Complex& estimate : all) {
    const double allowed =
        kEigenResidualTolerance * std::max(1.0, std::abs(estimate));
    const tridiagonal::Eigenpair pair =
        tridiagonal::refine(h.diagonal, off, estimate, allowed);
    if (!(pair.residual <= allowed)) {
      throw ConvergenceFailure(fmt::format(
          "eigenpair near {:.10g}{:+.10g}i rejected: residual {:.3e} > "
          "{:.3e} (n = {})",
          estimate.real(), estimate.imag(), pair.residual, allowed,
          h.grid.n_interior));
    }
    report.eigenvalues.push_back(estimate);
    report.residuals.push_back(pair.residual);
    report.max_imag = std::max(report.max_imag, std::abs(estimate.imag()));
  }
  return report;
}

}  // namespace

Grid1D Grid1D::make(double x_min, double x_max, int n_interior) {
  if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw InvalidArgument(
        fmt::format("grid needs x_min < x_max, got [{}, {}]", x_min, x_max));
  }
  if (n_interior < kMinInterior) {
    throw InvalidArgument(fmt::format(
        "grid needs at least {} interior points, got {}", kMinInterior,
        n_interior));
  }
  return Grid1D{x_min, x_max, n_interior};
}

bool DiscretizedHamiltonian::is_real() const noexcept {
  return std::all_of(diagonal.begin(), diagonal.end(),
                     [](const Complex& d) { return d.imag() == 0.0; });
}

DiscretizedHamiltonian discretize(const ComplexField& potential,
                                  const Grid1D& grid) {
  const double h = grid.spacing();
  const double kinetic = 2.0 / (h * h);
  DiscretizedHamiltonian out;
  out.grid = grid;
  out.off_diagonal = -1.0 / (h * h);
  out.diagonal.reserve(static_cast<std::size_t>(grid.n_interior));
  for (int j = 1; j <= grid.n_interior; ++j) {
    const double x = grid.node(j);
    Complex v;
    try {
      v = potential(x);
    } catch (const SingularPoint& e) {
      throw SingularPoint(x, fmt::format("grid node {} (x = {:.17g}): {}", j,
                                         x, e.what()));
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw SingularPoint(
          x, fmt::format("potential not finite at grid node {} (x = {:.17g})",
                         j, x));
    }
    out.diagonal.push_back(kinetic + v);
  }
  return out;
}

std::string_view to_string(PtPhase phase) noexcept {
  return phase == PtPhase::UnbrokenPT ? "UnbrokenPT" : "BrokenPT";
}

SpectrumReport eigenvalues(const DiscretizedHamiltonian& h, int count) {
  require_count(h, count);
  if (!h.is_real()) return eigenvalues_complex_path(h, count);

  std::vector<double> diag(h.diagonal.size());
  std::transform(h.diagonal.begin(), h.diagonal.end(), diag.begin(),
                 [](const Complex& d) { return d.real(); });
  const std::vector<double> off(diag.size() - 1, h.off_diagonal);
  const std::vector<double> values =
      tridiagonal::symmetric_eigenvalues(diag, off);
  return finish(h, std::vector<Complex>(values.begin(), values.end()), count);
}

SpectrumReport eigenvalues_complex_path(const DiscretizedHamiltonian& h,
                                        int count) {
  require_count(h, count);
  const std::vector<Complex> off(h.diagonal.size() - 1,
                                 Complex{h.off_diagonal, 0.0});
  return finish(h, tridiagonal::complex_symmetric_eigenvalues(h.diagonal, off),
                count);
}

double richardson_extrapolate(std::span<const double> spacings,
                              std::span<const double> values) {
  if (spacings.size() != values.size() || spacings.empty()) {
    throw InvalidArgument("Richardson needs matching, nonempty inputs");
  }
  const std::size_t n = values.size();
  std::vector<double> t(n);
  std::vector<double> p(values.begin(), values.end());
  for (std::size_t i = 0; i < n; ++i) t[i] = spacings[i] * spacings[i];
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      const double denom = t[i] - t[i + m];
      if (denom == 0.0) {
        throw InvalidArgument("Richardson needs distinct spacings");
      }
      p[i] = (-t[i + m] * p[i] + t[i] * p[i + 1]) / denom;
    }
  }
  return p[0];
}

SpectrumReport converged_spectrum(const ComplexField& potential, double x_min,
                                  double x_max, std::span<const int> grid_sizes,
                                  int count) {
  if (grid_sizes.empty()) throw InvalidArgument("no grid sizes given");
  std::vector<int> sizes(grid_sizes.begin(), grid_sizes.end());
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  std::vector<SpectrumReport> per_grid;
  std::vector<double> spacings;
  for (int n : sizes) {
    const Grid1D grid = Grid1D::make(x_min, x_max, n);
    per_grid.push_back(eigenvalues(discretize(potential, grid), count));
    spacings.push_back(grid.spacing());
  }
  SpectrumReport report = per_grid.back();
  report.grid_sizes_used = sizes;
  if (sizes.size() > 1) {
    for (int level = 0; level < count; ++level) {
      std::vector<double> values;
      for (const SpectrumReport& r : per_grid) {
        values.push_back(r.eigenvalues[static_cast<std::size_t>(level)].real());
      }
      report.richardson_estimates.push_back(
          richardson_extrapolate(spacings, values));
    }
  }
  return report;
}

double well_spectrum_analytic(int n) {
  if (n < 0) throw InvalidArgument("level index must be non-negative");
  return static_cast<double>(n) * static_cast<double>(n + 2);
}

double remainder_spectrum(int n, double k_base) {
  if (n < 0) throw InvalidArgument("level index must be non-negative");
  if (!(k_base > 0.0)) throw InvalidArgument("k_base must be positive");
  const double alpha = k_base;
  double sum = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double k_j = k_base + (j - 1) * alpha;
    sum += alpha * (alpha + 2.0 * k_j);
  }
  return sum;
}

IsospectralResult isospectral_check(const SpectrumReport& first,
                                    const SpectrumReport& second, int shift,
                                    double tol, LevelSource source) {
  if (shift < 0) throw InvalidArgument("shift must be non-negative");
  const bool extrapolated = source == LevelSource::Extrapolated;
  const std::size_t n_first = extrapolated ? first.richardson_estimates.size()
                                           : first.eigenvalues.size();
  const std::size_t n_second = extrapolated
                                   ? second.richardson_estimates.size()
                                   : second.eigenvalues.size();
  const auto s = static_cast<std::size_t>(shift);
  if (n_second == 0 || n_first <= s) {
    throw InsufficientEigenvalues(fmt::format(
        "cannot pair levels: first has {}, second has {}, shift {}", n_first,
        n_second, shift));
  }
  IsospectralResult result;
  const std::size_t matched = std::min(n_second, n_first - s);
  for (std::size_t j = 0; j < matched; ++j) {
    const double err =
        extrapolated ? std::abs(first.richardson_estimates[j + s] -
                                second.richardson_estimates[j])
                     : std::abs(first.eigenvalues[j + s] - second.eigenvalues[j]);
    result.max_error = std::max(result.max_error, err);
  }
  result.matched = static_cast<int>(matched);
  result.passed = result.max_error <= tol;
  return result;
}

PtPhase reality_classification(const SpectrumReport& report,
                               std::optional<double> tol_imag) {
  if (report.eigenvalues.empty()) {
    throw InvalidArgument("cannot classify an empty spectrum");
  }
  double tol = 0.0;
  if (tol_imag) {
    tol = *tol_imag;
  } else {
    double scale = 1.0;
    for (const Complex& v : report.eigenvalues) {
      scale = std::max(scale, std::abs(v.real()));
    }
    tol = 1e-6 * scale;
  }
  double max_imag = 0.0;
  for (const Complex& v : report.eigenvalues) {
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  return max_imag <= tol ? PtPhase::UnbrokenPT : PtPhase::BrokenPT;
}

std::string to_json(const SpectrumReport& report, int indent) {
  nlohmann::json j;
  nlohmann::json values = nlohmann::json::array();
  for (const Complex& v : report.eigenvalues) {
    values.push_back({v.real(), v.imag()});
  }
  j["eigenvalues"] = std::move(values);
  j["max_imag"] = report.max_imag;
  j["grid_sizes_used"] = report.grid_sizes_used;
  j["richardson_estimates"] = report.richardson_estimates;
  return j.dump(indent);
}

SpectrumReport spectrum_from_json(std::string_view text) {
  SpectrumReport report;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    for (const auto& pair : j.at("eigenvalues")) {
      report.eigenvalues.emplace_back(pair.at(0).get<double>(),
                                      pair.at(1).get<double>());
    }
    report.max_imag = j.at("max_imag").get<double>();
    report.grid_sizes_used = j.at("grid_sizes_used").get<std::vector<int>>();
    report.richardson_estimates =
        j.at("richardson_estimates").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(fmt::format("malformed spectrum JSON: {}", e.what()));
  }
  return report;
}

}  // namespace ptsusy
