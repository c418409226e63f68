#pragma once

#include <span>
#include <vector>

#include "ptsusy/types.hpp"

namespace ptsusy::tridiagonal {

/// All eigenvalues of a real symmetric tridiagonal matrix, ascending.
/// `off` holds the n - 1 couplings. Throws ConvergenceFailure.
std::vector<double> symmetric_eigenvalues(std::span<const double> diag,
                                          std::span<const double> off);

/// All eigenvalues of a complex symmetric (T = T^T, not Hermitian)
/// tridiagonal matrix by implicit QL with complex-orthogonal rotations.
/// Order is unspecified. Throws ConvergenceFailure when a level does not
/// converge within `max_sweeps` or a rotation degenerates.
std::vector<Complex> complex_symmetric_eigenvalues(std::span<const Complex> diag,
                                                   std::span<const Complex> off,
                                                   int max_sweeps = 60);

struct Eigenpair {
  Complex value;
  std::vector<Complex> vector;
  /// ||T v - value v|| / ||v||.
  double residual = 0.0;
};

/// Eigenvector for an eigenvalue estimate by inverse iteration, followed by
/// Rayleigh-quotient polishing while the residual exceeds `target_residual`.
Eigenpair refine(std::span<const Complex> diag, std::span<const Complex> off,
                 Complex estimate, double target_residual);

/// ||T v - lambda v|| / ||v||.
double residual_norm(std::span<const Complex> diag,
                     std::span<const Complex> off,
                     std::span<const Complex> v, Complex lambda);

}  // namespace ptsusy::tridiagonal
