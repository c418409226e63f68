#include "ptsusy/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace ptsusy {

namespace {

template <class Real>
std::complex<Real> wavefunction_impl(const WaveFunctionSpec& spec, Real x) {
  using C = std::complex<Real>;
  const Real k = spec.k;
  const Real q = spec.q;
  const C norm(static_cast<Real>(spec.norm.real()),
               static_cast<Real>(spec.norm.imag()));
  const Real pi = std::numbers::pi_v<Real>;
  switch (spec.family) {
    case Family::CotangentWell:
    case Family::TangentWell: {
      const bool cot = spec.family == Family::CotangentWell;
      // csc - cot = tan(kx/2) and sec + tan = tan(kx/2 + pi/4).
      const Real arg = cot ? std::tan(k * x / 2) : std::tan(k * x / 2 + pi / 4);
      if (!(arg > 0) || !std::isfinite(static_cast<double>(arg))) {
        throw DomainViolation(
            static_cast<double>(x),
            fmt::format("{} wave function phase undefined at x = {:.17g}: "
                        "outside the fundamental cell",
                        to_string(spec.family), static_cast<double>(x)));
      }
      const Real amplitude = cot ? std::sin(k * x) : std::cos(k * x);
      return norm * amplitude * std::polar(Real(1), -(q / k) * std::log(arg));
    }
    case Family::PlaneRight: {
      const C i(0, 1);
      return norm * std::exp(i * k * x - i * q * std::exp(-i * k * x) / k);
    }
    case Family::PlaneLeft: {
      const C i(0, 1);
      return norm * std::exp(-i * k * x + i * q * std::exp(i * k * x) / k);
    }
  }
  return {};
}

void require_regular(const WaveFunctionSpec& spec, double x) {
  const SuperpotentialSpec w = spec.superpotential();
  if (distance_to_singularity(w, x) <= w.exclusion_radius()) {
    throw SingularPoint(x, fmt::format("{} wave function evaluated at the "
                                       "singular point x = {:.17g}",
                                       to_string(spec.family), x));
  }
}

}  // namespace

SuperpotentialSpec WaveFunctionSpec::superpotential() const {
  return SuperpotentialSpec::make(family, k, q, k);
}

Domain Domain::make(double x_min, double x_max, DomainKind kind) {
  if (!(x_min < x_max)) {
    throw InvalidArgument(
        fmt::format("domain needs x_min < x_max, got [{}, {}]", x_min, x_max));
  }
  return Domain{x_min, x_max, kind};
}

Domain Domain::box(double k) {
  return make(0.0, std::numbers::pi / k, DomainKind::Box);
}

double Domain::center() const noexcept { return parity_center(*this); }

Domain fundamental_cell(Family family, double k) {
  const double pi = std::numbers::pi;
  switch (family) {
    case Family::CotangentWell:
      return Domain::make(0.0, pi / k, DomainKind::Box);
    case Family::TangentWell:
      return Domain::make(-pi / (2.0 * k), pi / (2.0 * k), DomainKind::Box);
    case Family::PlaneRight:
    case Family::PlaneLeft:
      break;
  }
  return Domain::make(-pi / k, pi / k, DomainKind::Line);
}

double parity_center(const Domain& domain) noexcept {
  return domain.kind == DomainKind::Box ? 0.5 * (domain.x_min + domain.x_max)
                                        : 0.0;
}

Complex eval_wavefunction(const WaveFunctionSpec& spec, double x) {
  require_regular(spec, x);
  return wavefunction_impl<double>(spec, x);
}

Complex eval_wavefunction_derivative(const WaveFunctionSpec& spec, double x) {
  return -eval_superpotential(spec.superpotential(), x) *
         eval_wavefunction(spec, x);
}

Complex superpose(Complex a, const WaveFunctionSpec& psi1, Complex b,
                  const WaveFunctionSpec& psi2, double x) {
  return a * eval_wavefunction(psi1, x) + b * eval_wavefunction(psi2, x);
}

double probability_density(const WaveFunctionSpec& spec, double x) {
  return std::norm(eval_wavefunction(spec, x));
}

Complex normalization_constant(const WaveFunctionSpec& spec,
                               const Domain& domain, int points) {
  if (domain.kind != DomainKind::Box) {
    throw InvalidArgument("normalization is only defined on Box domains");
  }
  if (points < 3 || points % 2 == 0) {
    throw InvalidArgument("Simpson quadrature needs an odd node count >= 3");
  }
  WaveFunctionSpec unit = spec;
  unit.norm = Complex{1.0, 0.0};
  const double inset = unit.superpotential().exclusion_radius();
  const double h = domain.length() / (points - 1);

  auto density = [&](int j) {
    const double x = domain.x_min + j * h;
    try {
      return probability_density(unit, x);
    } catch (const SingularPoint&) {
      // twice the radius so the nudged node is clear of the exclusion zone
      const double nudged = j == 0 ? x + 2 * inset : x - 2 * inset;
      if (j != 0 && j != points - 1) throw;
      return probability_density(unit, nudged);
    }
  };

  double sum = density(0) + density(points - 1);
  for (int j = 1; j < points - 1; ++j) {
    sum += (j % 2 == 1 ? 4.0 : 2.0) * density(j);
  }
  const double integral = sum * h / 3.0;
  if (!(integral > 0.0)) {
    throw InvalidArgument("wave function has zero norm on the domain");
  }
  return Complex{1.0 / std::sqrt(integral), 0.0};
}

double pt_asymmetry(const ComplexField& field, double center,
                    std::span<const double> sample_points) {
  double worst = 0.0;
  for (double x : sample_points) {
    const double mirror = 2.0 * center - x;
    Complex here;
    Complex there;
    try {
      here = field(x);
      there = field(mirror);
    } catch (const SingularPoint& e) {
      throw SingularPoint(
          x, fmt::format("PT check at sample x = {:.17g}: {}", x, e.what()));
    }
    if (!std::isfinite(std::abs(here)) || !std::isfinite(std::abs(there))) {
      throw SingularPoint(
          x, fmt::format("PT check: field not finite at sample x = {:.17g} "
                         "or its mirror {:.17g}",
                         x, mirror));
    }
    worst = std::max(worst, std::abs(there - std::conj(here)));
  }
  return worst;
}

Complex schrodinger_residual(const ComplexField& potential,
                             const WaveFunctionSpec& spec, double energy,
                             double x, double h) {
  using Ext = long double;
  if (!(h > 0.0)) throw InvalidArgument("step h must be positive");
  const SuperpotentialSpec w = spec.superpotential();
  const double d = distance_to_singularity(w, x);
  if (d <= w.exclusion_radius()) {
    throw SingularPoint(x, fmt::format("residual requested at singular point "
                                       "x = {:.17g}",
                                       x));
  }
  if (h > 0.1 * d) {
    throw StepTooLarge(fmt::format(
        "step {:.3g} exceeds a tenth of the distance {:.3g} to the nearest "
        "singularity",
        h, d));
  }
  const Ext xe = x;
  const Ext he = h;
  const std::complex<Ext> psi = wavefunction_impl<Ext>(spec, xe);
  const std::complex<Ext> second =
      (wavefunction_impl<Ext>(spec, xe + he) - Ext(2) * psi +
       wavefunction_impl<Ext>(spec, xe - he)) /
      (he * he);
  const Complex v = potential(x);
  const std::complex<Ext> ve(v.real(), v.imag());
  const std::complex<Ext> r = -second + (ve - Ext(energy)) * psi;
  const Ext scale = std::max<Ext>(std::abs(psi), Ext(1e-30));
  return Complex(static_cast<double>(r.real() / scale),
                 static_cast<double>(r.imag() / scale));
}

}  // namespace ptsusy
