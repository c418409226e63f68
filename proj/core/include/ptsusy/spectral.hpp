#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptsusy/types.hpp"

namespace ptsusy {

/// Uniform grid of interior nodes x_min + j h, j = 1..n_interior, with
/// h = (x_max - x_min) / (n_interior + 1). The endpoints carry Dirichlet
/// conditions and are never evaluated.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_interior = 16;

  static constexpr int kMinInterior = 3;

  static Grid1D make(double x_min, double x_max, int n_interior);
  double spacing() const noexcept {
    return (x_max - x_min) / (n_interior + 1);
  }
  double node(int j) const noexcept { return x_min + j * spacing(); }
};

/// Three-point discretization of -d^2/dx^2 + V. Complex symmetric, not
/// Hermitian when V is complex.
struct DiscretizedHamiltonian {
  Grid1D grid;
  std::vector<Complex> diagonal;
  double off_diagonal = 0.0;

  bool is_real() const noexcept;
};

DiscretizedHamiltonian discretize(const ComplexField& potential,
                                  const Grid1D& grid);

enum class PtPhase { UnbrokenPT, BrokenPT };

std::string_view to_string(PtPhase phase) noexcept;

struct SpectrumReport {
  /// Ascending by real part, ties by imaginary part.
  std::vector<Complex> eigenvalues;
  double max_imag = 0.0;
  std::vector<int> grid_sizes_used;
  /// Per level: real part extrapolated to zero spacing. Empty unless
  /// several grids were used.
  std::vector<double> richardson_estimates;
  /// Per level: ||H v - lambda v|| / ||v|| on the finest grid.
  std::vector<double> residuals;
};

/// Relative residual accepted for an eigenpair: residual / max(1, |lambda|).
inline constexpr double kEigenResidualTolerance = 1e-8;

/// The `count` eigenvalues of smallest real part. Real diagonals take the
/// symmetric QL path; complex ones the complex-symmetric QL path. Every
/// returned eigenvalue carries an inverse-iteration eigenvector whose
/// relative residual passed kEigenResidualTolerance, otherwise
/// ConvergenceFailure is thrown.
SpectrumReport eigenvalues(const DiscretizedHamiltonian& h, int count);

/// Forces the complex path even for real diagonals. Used to validate it
/// against the symmetric path.
SpectrumReport eigenvalues_complex_path(const DiscretizedHamiltonian& h,
                                        int count);

/// Value at zero spacing of data v(h) assumed to expand in powers of h^2,
/// by Neville's scheme on the given spacings.
double richardson_extrapolate(std::span<const double> spacings,
                              std::span<const double> values);

/// Runs `eigenvalues` on each grid size (same interval) and attaches
/// per-level Richardson estimates. The eigenvalues reported are those of
/// the finest grid.
SpectrumReport converged_spectrum(const ComplexField& potential, double x_min,
                                  double x_max, std::span<const int> grid_sizes,
                                  int count);

/// n(n + 2).
double well_spectrum_analytic(int n);

/// Sum_{j=1..n} alpha (alpha + 2 k_j), k_j = k_base + (j - 1) alpha,
/// alpha = k_base.
double remainder_spectrum(int n, double k_base);

struct IsospectralResult {
  int matched = 0;
  double max_error = 0.0;
  bool passed = false;
};

enum class LevelSource { Raw, Extrapolated };

/// Pairs level j of `second` with level j + shift of `first` for every j
/// available in both. Extrapolated compares richardson_estimates instead of
/// the finest-grid eigenvalues. Throws InsufficientEigenvalues.
IsospectralResult isospectral_check(const SpectrumReport& first,
                                    const SpectrumReport& second, int shift,
                                    double tol,
                                    LevelSource source = LevelSource::Raw);

/// UnbrokenPT when max_imag <= tol_imag. Without a tolerance,
/// 1e-6 * max(1, max |Re lambda|) is used.
PtPhase reality_classification(const SpectrumReport& report,
                               std::optional<double> tol_imag = std::nullopt);

/// {"eigenvalues": [[re, im], ...], "grid_sizes_used": [...],
///  "max_imag": ..., "richardson_estimates": [...]} with sorted keys.
std::string to_json(const SpectrumReport& report, int indent = 2);
SpectrumReport spectrum_from_json(std::string_view text);

}  // namespace ptsusy
