#include "ptsusy/scattering.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <fmt/format.h>

#include "ptsusy/errors.hpp"

namespace ptsusy {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double kMaxExponent = 700.0;

// Exact propagator across width w of a constant potential v.
Matrix2c constant_step(Complex v, double w, double energy) {
  Matrix2c m;
  const Complex delta = energy - v;
  if (std::abs(delta) < 1e-9 * std::abs(v) || delta == Complex{}) {
    // E = V: linear solutions.
    m << 1.0, w, 0.0, 1.0;
    return m;
  }
  const Complex k = std::sqrt(delta);
  if (std::abs(k.imag()) * w > kMaxExponent) {
    throw EvanescentOverflow(fmt::format(
        "decay exponent {:.4g} over width {:.4g} exceeds double range; split "
        "the segment",
        std::abs(k.imag()) * w, w));
  }
  const Complex c = std::cos(k * w);
  const Complex s = std::sin(k * w);
  m << c, s / k, -k * s, c;
  return m;
}

Matrix2c asymptotic_basis(double k0, double x) {
  const Complex ep = std::exp(I * (k0 * x));
  const Complex em = std::exp(-I * (k0 * x));
  Matrix2c d;
  d << ep, em, I * k0 * ep, -I * k0 * em;
  return d;
}

}  // namespace

SegmentPotential SegmentPotential::constant(Complex value) {
  SegmentPotential s;
  s.value_ = value;
  s.real_ = value.imag() == 0.0;
  return s;
}

SegmentPotential SegmentPotential::smooth(ComplexField field,
                                          bool real_valued) {
  if (!field) throw InvalidArgument("smooth segment needs a field");
  SegmentPotential s;
  s.field_ = std::move(field);
  s.real_ = real_valued;
  return s;
}

PiecewisePotential PiecewisePotential::make(
    std::vector<double> breakpoints, std::vector<SegmentPotential> segments,
    double asymptotic) {
  if (segments.empty()) {
    if (!breakpoints.empty()) {
      throw InvalidArgument("breakpoints given without segments");
    }
  } else if (breakpoints.size() != segments.size() + 1) {
    throw InvalidArgument(fmt::format(
        "{} segments need {} breakpoints, got {}", segments.size(),
        segments.size() + 1, breakpoints.size()));
  }
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) {
      throw InvalidArgument("breakpoints must be strictly ascending");
    }
  }
  if (!std::isfinite(asymptotic)) {
    throw InvalidArgument("asymptotic value must be finite");
  }
  return PiecewisePotential{std::move(breakpoints), std::move(segments),
                            asymptotic};
}

PiecewisePotential PiecewisePotential::empty(double asymptotic) {
  return make({}, {}, asymptotic);
}

PiecewisePotential PiecewisePotential::square(double x0, double x1,
                                              Complex v0) {
  return make({x0, x1}, {SegmentPotential::constant(v0)}, 0.0);
}

bool PiecewisePotential::all_real() const noexcept {
  return std::all_of(segments.begin(), segments.end(),
                     [](const SegmentPotential& s) { return s.is_real(); });
}

Matrix2c fundamental_matrix(const SegmentPotential& segment, double x_a,
                            double x_b, double energy, int slices) {
  if (slices < 1) throw InvalidArgument("slice count must be positive");
  const double width = x_b - x_a;
  if (segment.is_constant()) return constant_step(segment.at(x_a), width, energy);
  const double w = width / slices;
  Matrix2c m = Matrix2c::Identity();
  for (int j = 0; j < slices; ++j) {
    const double mid = x_a + (j + 0.5) * w;
    m = constant_step(segment.at(mid), w, energy) * m;
  }
  return m;
}

Matrix2c transfer_matrix(const PiecewisePotential& potential, double energy,
                         int slices) {
  if (!(energy > potential.asymptotic)) {
    throw InvalidArgument(fmt::format(
        "energy {} must exceed the asymptotic value {}", energy,
        potential.asymptotic));
  }
  const double k0 = std::sqrt(energy - potential.asymptotic);
  if (2.0 * k0 < 1e-12) {
    throw DegenerateMatch(fmt::format(
        "asymptotic plane-wave Wronskian {:.3e} below 1e-12", 2.0 * k0));
  }
  if (potential.segments.empty()) return Matrix2c::Identity();

  Matrix2c phi = Matrix2c::Identity();
  for (std::size_t i = 0; i < potential.segments.size(); ++i) {
    phi = fundamental_matrix(potential.segments[i], potential.breakpoints[i],
                             potential.breakpoints[i + 1], energy, slices) *
          phi;
  }
  const double x_left = potential.breakpoints.front();
  const double x_right = potential.breakpoints.back();
  return asymptotic_basis(k0, x_right).inverse() * phi *
         asymptotic_basis(k0, x_left);
}

ScatteringResult transmission_reflection(const PiecewisePotential& potential,
                                         double energy, int slices) {
  const Matrix2c m = transfer_matrix(potential, energy, slices);
  if (std::abs(m(1, 1)) < 1e-300) {
    throw DegenerateMatch(fmt::format(
        "M22 vanishes at E = {}: no scattering solution (spectral "
        "singularity)",
        energy));
  }
  ScatteringResult out;
  out.energy = energy;
  out.r = -m(1, 0) / m(1, 1);
  // det M = 1 (constant Wronskian, equal asymptotics). Forming the
  // determinant numerically cancels catastrophically for opaque barriers.
  out.t = 1.0 / m(1, 1);
  out.flux_defect = std::norm(out.r) + std::norm(out.t) - 1.0;
  const bool sliced = std::any_of(
      potential.segments.begin(), potential.segments.end(),
      [](const SegmentPotential& s) { return !s.is_constant(); });
  out.slices = sliced ? slices : 0;
  return out;
}

std::vector<ScatteringResult> plane_partner_sweep(
    const SuperpotentialSpec& spec, Partner which, double x_a, double x_b,
    std::span<const double> energies, const SweepOptions& options) {
  if (!is_plane(spec.family)) {
    throw InvalidArgument("plane_partner_sweep needs a plane family");
  }
  if (!(x_a < x_b) || !std::isfinite(x_a) || !std::isfinite(x_b)) {
    throw InvalidArgument("sweep window must be finite with x_a < x_b");
  }
  if (options.initial_slices < 1000) {
    throw InvalidArgument("sweep needs at least 1000 slices");
  }
  const PiecewisePotential potential = PiecewisePotential::make(
      {x_a, x_b}, {SegmentPotential::smooth(partner_field(spec, which))});

  std::vector<ScatteringResult> out;
  out.reserve(energies.size());
  for (double energy : energies) {
    if (!(energy > 0.0)) {
      throw InvalidArgument(fmt::format("sweep energy {} not positive", energy));
    }
    int slices = options.initial_slices;
    ScatteringResult coarse =
        transmission_reflection(potential, energy, slices);
    bool converged = false;
    for (int d = 0; d < options.max_doublings; ++d) {
      slices *= 2;
      ScatteringResult fine = transmission_reflection(potential, energy, slices);
      const double change =
          std::abs(fine.transmittance() - coarse.transmittance());
      coarse = fine;
      if (change <= options.tolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw SliceTooCoarse(fmt::format(
          "T at E = {} still moved by more than {:.1e} at {} slices", energy,
          options.tolerance, slices));
    }
    out.push_back(coarse);
  }
  return out;
}

std::string to_csv(std::span<const ScatteringResult> results) {
  std::string out = "energy,re_r,im_r,re_t,im_t,R,T,flux_defect\n";
  for (const ScatteringResult& r : results) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},"
                       "{:.17g},{:.17g}\n",
                       r.energy, r.r.real(), r.r.imag(), r.t.real(),
                       r.t.imag(), r.reflectance(), r.transmittance(),
                       r.flux_defect);
  }
  return out;
}

}  // namespace ptsusy
