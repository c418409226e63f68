#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ptsusy/superpotential.hpp"
#include "ptsusy/types.hpp"

namespace ptsusy {

using Matrix2c = Eigen::Matrix2cd;

/// Potential on one interval: either a constant or a smooth field that is
/// integrated as a product of thin constant slices.
class SegmentPotential {
 public:
  static SegmentPotential constant(Complex value);
  /// `real_valued` declares that the field never leaves the real axis.
  static SegmentPotential smooth(ComplexField field, bool real_valued = false);

  bool is_constant() const noexcept { return !field_; }
  bool is_real() const noexcept { return real_; }
  Complex at(double x) const { return field_ ? field_(x) : value_; }

 private:
  Complex value_{};
  ComplexField field_;
  bool real_ = true;
};

/// Piecewise potential on the line: segment i spans
/// [breakpoints[i], breakpoints[i+1]]; outside the outermost breakpoints
/// the potential is the real constant `asymptotic`.
struct PiecewisePotential {
  std::vector<double> breakpoints;
  std::vector<SegmentPotential> segments;
  double asymptotic = 0.0;

  static PiecewisePotential make(std::vector<double> breakpoints,
                                 std::vector<SegmentPotential> segments,
                                 double asymptotic = 0.0);
  static PiecewisePotential empty(double asymptotic = 0.0);
  /// Constant v0 on [x0, x1], zero outside.
  static PiecewisePotential square(double x0, double x1, Complex v0);

  bool all_real() const noexcept;
};

struct ScatteringResult {
  double energy = 0.0;
  Complex r;
  Complex t;
  /// |r|^2 + |t|^2 - 1.
  double flux_defect = 0.0;
  /// Thin slices per smooth segment used for this result (0: none needed).
  int slices = 0;

  double reflectance() const noexcept { return std::norm(r); }
  double transmittance() const noexcept { return std::norm(t); }
};

inline constexpr int kDefaultSlices = 2000;

/// Maps (psi, psi') at x_a to (psi, psi') at x_b for -psi'' + V psi = E psi
/// on one segment. Constant segments are exact; smooth segments use
/// `slices` midpoint-sampled constant slices. Throws EvanescentOverflow
/// when a slice's decay exponent exceeds 700.
Matrix2c fundamental_matrix(const SegmentPotential& segment, double x_a,
                            double x_b, double energy,
                            int slices = kDefaultSlices);

/// Maps the coefficients (A, B) of A exp(ikx) + B exp(-ikx) left of the
/// structure to those on the right, k = sqrt(E - asymptotic), both in the
/// global coordinate. An empty structure gives the identity, and adjacent
/// structures compose by matrix product.
Matrix2c transfer_matrix(const PiecewisePotential& potential, double energy,
                         int slices = kDefaultSlices);

/// Unit amplitude incident from the left.
ScatteringResult transmission_reflection(const PiecewisePotential& potential,
                                         double energy,
                                         int slices = kDefaultSlices);

struct SweepOptions {
  int initial_slices = kDefaultSlices;
  double tolerance = 1e-6;
  int max_doublings = 6;
};

/// Embeds the closed-form partner of a plane-family superpotential in
/// [x_a, x_b] (zero outside) and scatters at each energy. Slices are doubled
/// until T changes by at most options.tolerance, else SliceTooCoarse.
/// Results come back in input order.
std::vector<ScatteringResult> plane_partner_sweep(
    const SuperpotentialSpec& spec, Partner which, double x_a, double x_b,
    std::span<const double> energies, const SweepOptions& options = {});

/// Header plus one row per result:
/// energy,re_r,im_r,re_t,im_t,R,T,flux_defect (17 significant digits).
std::string to_csv(std::span<const ScatteringResult> results);

}  // namespace ptsusy
