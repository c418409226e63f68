#pragma once

#include <span>
#include <vector>

#include "ptsusy/errors.hpp"
#include "ptsusy/types.hpp"

namespace ptsusy {

/// Parameters selecting one complexified superpotential.
///
///   CotangentWell  W = -k cot(a x) + i q csc(a x)
///   TangentWell    W =  k tan(a x) + i q sec(a x)
///   PlaneRight     W = -i k + q exp(-i a x)
///   PlaneLeft      W =  i k + q exp( i a x)
///
/// with a = alpha. The imaginary (well) or additive (plane) term is the
/// shape-invariance constraint function; its argument can be scaled by
/// `constraint_frequency` to build a deliberately wrong constraint for
/// negative controls (1 is the shape-invariant choice).
struct SuperpotentialSpec {
  Family family = Family::CotangentWell;
  double k = 1.0;
  double q = 0.0;
  double alpha = 1.0;
  double constraint_frequency = 1.0;
  /// Exclusion radius around divergences; <= 0 selects 1e-6 * pi / alpha.
  double exclusion = 0.0;

  /// Validated constructor; alpha defaults to k. Throws InvalidArgument.
  static SuperpotentialSpec make(Family family, double k, double q,
                                 double alpha = 0.0);

  /// Same constraint function, wave number raised by alpha. This is the
  /// "k + alpha" member of the shape-invariance ladder.
  SuperpotentialSpec shifted() const;

  /// Copy with the constraint argument scaled by `factor`.
  SuperpotentialSpec perturbed(double factor) const;

  double exclusion_radius() const noexcept;
};

/// Distance from x to the nearest divergence of W (and hence of V1, V2).
/// Infinite for the plane families.
double distance_to_singularity(const SuperpotentialSpec& spec, double x);

/// Divergence positions inside [x_min, x_max], ascending.
std::vector<double> singularities_in(const SuperpotentialSpec& spec,
                                     double x_min, double x_max);

Complex eval_superpotential(const SuperpotentialSpec& spec, double x);

/// Closed-form W'(x).
Complex eval_superpotential_derivative(const SuperpotentialSpec& spec,
                                       double x);

/// Shape-invariance constraint f(x): q csc(a x), q sec(a x), q exp(-+ i a x).
Complex constraint_function(const SuperpotentialSpec& spec, double x);

/// Closed-form partner potential in expanded form, e.g. for the cotangent
/// well
///   V = k(k -+ a) csc^2 - k^2 - f^2 + i(-+ f' - 2 k cot f).
/// At alpha = k and the unperturbed constraint this reduces to
///   V1 = -q^2 csc^2 - k^2 - i q k cot csc,
///   V2 = (2k^2 - q^2) csc^2 - k^2 - 3 i q k cot csc.
Complex eval_partner(const SuperpotentialSpec& spec, Partner which, double x);

/// W^2 -+ W' with W' from a central difference of eval_superpotential.
/// Used only to cross-check eval_partner.
Complex partner_from_superpotential(const SuperpotentialSpec& spec,
                                    Partner which, double x, double h = 1e-5);

/// V2(k, x) - V1(k + alpha, x). Constant alpha(alpha + 2k) when the
/// constraint is the shape-invariant one.
Complex remainder(const SuperpotentialSpec& spec, double x);

struct ShapeInvarianceResult {
  Complex mean;
  double max_abs_deviation = 0.0;
  /// Threshold the deviation was compared against.
  double tolerance = 0.0;
  bool holds = false;
};

/// Samples the remainder and reports its spread about the mean. The
/// threshold is rel_tol * |mean|, or abs_tol when |mean| is below abs_tol.
ShapeInvarianceResult check_shape_invariance(
    const SuperpotentialSpec& spec, std::span<const double> sample_points,
    double rel_tol = 1e-10, double abs_tol = 1e-12);

/// The two partners of one superpotential as fields, with the divergence
/// positions inside the requested window.
struct PartnerPair {
  SuperpotentialSpec spec;
  ComplexField v1;
  ComplexField v2;
  std::vector<double> singularities;
};

PartnerPair make_partner_pair(const SuperpotentialSpec& spec, double x_min,
                              double x_max);

ComplexField partner_field(const SuperpotentialSpec& spec, Partner which);

}  // namespace ptsusy
