#pragma once

#include <span>

#include "ptsusy/superpotential.hpp"
#include "ptsusy/types.hpp"

namespace ptsusy {

/// Zero-energy state psi = N exp(-int W) of a superpotential with alpha = k.
struct WaveFunctionSpec {
  Family family = Family::CotangentWell;
  double k = 1.0;
  double q = 0.0;
  Complex norm{1.0, 0.0};

  /// The superpotential whose V1 annihilates this state.
  SuperpotentialSpec superpotential() const;
};

enum class DomainKind { Box, Line };

struct Domain {
  double x_min = 0.0;
  double x_max = 0.0;
  DomainKind kind = DomainKind::Box;

  static Domain make(double x_min, double x_max, DomainKind kind);
  /// [0, L] with L = pi / k.
  static Domain box(double k = 1.0);
  double length() const noexcept { return x_max - x_min; }
  double center() const noexcept;
};

/// Largest interval on which the family's closed-form state is defined:
/// (0, pi/k) for the cotangent well, (-pi/2k, pi/2k) for the tangent well.
/// Plane families return a Line domain of one period centred on 0.
Domain fundamental_cell(Family family, double k);

/// Parity centre used for PT checks: L/2 for a box, 0 for a line.
double parity_center(const Domain& domain) noexcept;

/// psi_c = A sin(kx) exp(-i (q/k) ln[csc(kx) - cot(kx)])
/// psi_t = B cos(kx) exp(-i (q/k) ln[sec(kx) + tan(kx)])
/// psi_R = N exp(ikx) exp(-i q exp(-ikx) / k)
/// psi_L = N exp(-ikx) exp( i q exp( ikx) / k)
///
/// The well phases are exactly exp(-int W) for W = -k cot + i q csc
/// (resp. k tan + i q sec). The log argument equals tan(kx/2) (resp.
/// tan(kx/2 + pi/4)) and must be positive; outside the fundamental cell
/// DomainViolation is thrown instead of continuing analytically.
Complex eval_wavefunction(const WaveFunctionSpec& spec, double x);

/// psi' = -W psi.
Complex eval_wavefunction_derivative(const WaveFunctionSpec& spec, double x);

Complex superpose(Complex a, const WaveFunctionSpec& psi1, Complex b,
                  const WaveFunctionSpec& psi2, double x);

double probability_density(const WaveFunctionSpec& spec, double x);

/// Norm constant giving unit integral of |psi|^2 over a Box domain, by
/// composite Simpson on `points` nodes. Endpoints that are singular or
/// outside the cell are pulled inward by the exclusion radius.
Complex normalization_constant(const WaveFunctionSpec& spec,
                               const Domain& domain, int points = 2001);

/// max_x |field(2c - x) - conj(field(x))|. Zero means the field is PT
/// symmetric about c. Non-finite values raise SingularPoint naming the x.
double pt_asymmetry(const ComplexField& field, double center,
                    std::span<const double> sample_points);

/// [-psi'' + V psi - E psi] / max(|psi|, 1e-30) at x, with psi'' by a
/// second-order central difference. The wave function is evaluated in
/// extended precision so the O(h^2) truncation term is visible down to
/// h ~ 1e-4.
Complex schrodinger_residual(const ComplexField& potential,
                             const WaveFunctionSpec& spec, double energy,
                             double x, double h);

}  // namespace ptsusy
