#include "ptsusy/superpotential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <fmt/format.h>

namespace ptsusy {

namespace {

using std::numbers::pi;
constexpr Complex I{0.0, 1.0};

// Distance from x to the nearest zero of sin(w x).
double distance_to_sin_zero(double x, double w) {
  const double period = pi / w;
  return std::abs(x - std::round(x / period) * period);
}

// Distance from x to the nearest zero of cos(w x).
double distance_to_cos_zero(double x, double w) {
  const double period = pi / w;
  return std::abs(x - (std::round(x / period - 0.5) + 0.5) * period);
}

// cos through the complementary angle so the well centre (w x = pi/2 in
// double) gives an exact zero instead of 6e-17.
double cos_near_centre(double t) {
  return std::abs(t) <= pi ? std::sin(pi / 2 - t) : std::cos(t);
}

void require_regular(const SuperpotentialSpec& spec, double x) {
  const double d = distance_to_singularity(spec, x);
  if (d <= spec.exclusion_radius()) {
    throw SingularPoint(
        x, fmt::format("{} superpotential is singular within {:.3g} of x = "
                       "{:.17g}",
                       to_string(spec.family), spec.exclusion_radius(), x));
  }
}

// The constraint function and its derivative, unchecked.
struct Constraint {
  Complex f;
  Complex df;
};

Constraint constraint_at(const SuperpotentialSpec& s, double x) {
  const double w = s.constraint_frequency * s.alpha;
  switch (s.family) {
    case Family::CotangentWell: {
      const double csc = 1.0 / std::sin(w * x);
      const double cot = cos_near_centre(w * x) * csc;
      return {s.q * csc, -s.q * w * csc * cot};
    }
    case Family::TangentWell: {
      const double sec = 1.0 / std::cos(w * x);
      const double tan = std::sin(w * x) * sec;
      return {s.q * sec, s.q * w * sec * tan};
    }
    case Family::PlaneRight: {
      const Complex f = s.q * std::exp(-I * (w * x));
      return {f, -I * w * f};
    }
    case Family::PlaneLeft: {
      const Complex f = s.q * std::exp(I * (w * x));
      return {f, I * w * f};
    }
  }
  return {};
}

double sign_of(Partner which) { return which == Partner::V1 ? -1.0 : 1.0; }

}  // namespace

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::CotangentWell: return "CotangentWell";
    case Family::TangentWell: return "TangentWell";
    case Family::PlaneRight: return "PlaneRight";
    case Family::PlaneLeft: return "PlaneLeft";
  }
  return "?";
}

std::string_view to_string(Partner p) noexcept {
  return p == Partner::V1 ? "V1" : "V2";
}

Family parse_family(std::string_view name) {
  if (name == "CotangentWell" || name == "cot") return Family::CotangentWell;
  if (name == "TangentWell" || name == "tan") return Family::TangentWell;
  if (name == "PlaneRight" || name == "right") return Family::PlaneRight;
  if (name == "PlaneLeft" || name == "left") return Family::PlaneLeft;
  throw InvalidArgument(fmt::format("unknown family '{}'", name));
}

Partner parse_partner(std::string_view name) {
  if (name == "V1" || name == "v1" || name == "1") return Partner::V1;
  if (name == "V2" || name == "v2" || name == "2") return Partner::V2;
  throw InvalidArgument(fmt::format("unknown partner '{}'", name));
}

SuperpotentialSpec SuperpotentialSpec::make(Family family, double k, double q,
                                            double alpha) {
  if (alpha == 0.0) alpha = k;
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw InvalidArgument(fmt::format("k must be positive, got {}", k));
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument(fmt::format("alpha must be positive, got {}", alpha));
  }
  if (!std::isfinite(q)) throw InvalidArgument("q must be finite");
  SuperpotentialSpec s;
  s.family = family;
  s.k = k;
  s.q = q;
  s.alpha = alpha;
  return s;
}

SuperpotentialSpec SuperpotentialSpec::shifted() const {
  SuperpotentialSpec s = *this;
  s.k = k + alpha;
  return s;
}

SuperpotentialSpec SuperpotentialSpec::perturbed(double factor) const {
  SuperpotentialSpec s = *this;
  s.constraint_frequency = constraint_frequency * factor;
  return s;
}

double SuperpotentialSpec::exclusion_radius() const noexcept {
  return exclusion > 0.0 ? exclusion : 1e-6 * pi / alpha;
}

double distance_to_singularity(const SuperpotentialSpec& spec, double x) {
  const double w = spec.alpha;
  const double wf = spec.alpha * spec.constraint_frequency;
  switch (spec.family) {
    case Family::CotangentWell:
      return std::min(distance_to_sin_zero(x, w), distance_to_sin_zero(x, wf));
    case Family::TangentWell:
      return std::min(distance_to_cos_zero(x, w), distance_to_cos_zero(x, wf));
    case Family::PlaneRight:
    case Family::PlaneLeft:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

std::vector<double> singularities_in(const SuperpotentialSpec& spec,
                                     double x_min, double x_max) {
  std::vector<double> out;
  if (is_plane(spec.family) || !(x_min <= x_max)) return out;
  const double offset = spec.family == Family::TangentWell ? 0.5 : 0.0;
  for (double w : {spec.alpha, spec.alpha * spec.constraint_frequency}) {
    const double period = pi / w;
    for (double j = std::ceil(x_min / period - offset);
         (j + offset) * period <= x_max; j += 1.0) {
      out.push_back((j + offset) * period);
    }
  }
  std::sort(out.begin(), out.end());
  // Coincident poles of the two terms appear once.
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) {
                          return std::abs(a - b) <=
                                 1e-12 * std::max(1.0, std::abs(a));
                        }),
            out.end());
  return out;
}

Complex eval_superpotential(const SuperpotentialSpec& spec, double x) {
  require_regular(spec, x);
  const double w = spec.alpha;
  const Complex f = constraint_at(spec, x).f;
  switch (spec.family) {
    case Family::CotangentWell:
      return -spec.k * cos_near_centre(w * x) / std::sin(w * x) + I * f;
    case Family::TangentWell:
      return spec.k * std::tan(w * x) + I * f;
    case Family::PlaneRight:
      return -I * spec.k + f;
    case Family::PlaneLeft:
      return I * spec.k + f;
  }
  return {};
}

Complex eval_superpotential_derivative(const SuperpotentialSpec& spec,
                                       double x) {
  require_regular(spec, x);
  const double w = spec.alpha;
  const Complex df = constraint_at(spec, x).df;
  switch (spec.family) {
    case Family::CotangentWell: {
      const double csc = 1.0 / std::sin(w * x);
      return spec.k * w * csc * csc + I * df;
    }
    case Family::TangentWell: {
      const double sec = 1.0 / std::cos(w * x);
      return spec.k * w * sec * sec + I * df;
    }
    case Family::PlaneRight:
    case Family::PlaneLeft:
      return df;
  }
  return {};
}

Complex constraint_function(const SuperpotentialSpec& spec, double x) {
  require_regular(spec, x);
  return constraint_at(spec, x).f;
}

Complex eval_partner(const SuperpotentialSpec& spec, Partner which, double x) {
  require_regular(spec, x);
  const double k = spec.k;
  const double a = spec.alpha;
  const double s = sign_of(which);  // -1 for V1, +1 for V2
  const auto [f, df] = constraint_at(spec, x);
  switch (spec.family) {
    case Family::CotangentWell: {
      const double csc = 1.0 / std::sin(a * x);
      const double cot = cos_near_centre(a * x) * csc;
      return k * (k + s * a) * csc * csc - k * k - f * f +
             I * (s * df - 2.0 * k * cot * f);
    }
    case Family::TangentWell: {
      const double sec = 1.0 / std::cos(a * x);
      const double tan = std::sin(a * x) * sec;
      return k * (k + s * a) * sec * sec - k * k - f * f +
             I * (s * df + 2.0 * k * tan * f);
    }
    case Family::PlaneRight:
      return -k * k - 2.0 * I * k * f + f * f + s * df;
    case Family::PlaneLeft:
      return -k * k + 2.0 * I * k * f + f * f + s * df;
  }
  return {};
}

Complex partner_from_superpotential(const SuperpotentialSpec& spec,
                                    Partner which, double x, double h) {
  if (!(h > 0.0)) throw InvalidArgument("step h must be positive");
  const double d = distance_to_singularity(spec, x);
  require_regular(spec, x);
  if (h > 0.1 * d) {
    throw StepTooLarge(fmt::format(
        "step {:.3g} exceeds a tenth of the distance {:.3g} to the nearest "
        "singularity at x = {:.17g}",
        h, d, x));
  }
  const Complex w = eval_superpotential(spec, x);
  const Complex dw =
      (eval_superpotential(spec, x + h) - eval_superpotential(spec, x - h)) /
      (2.0 * h);
  return w * w + sign_of(which) * dw;
}

Complex remainder(const SuperpotentialSpec& spec, double x) {
  return eval_partner(spec, Partner::V2, x) -
         eval_partner(spec.shifted(), Partner::V1, x);
}

ShapeInvarianceResult check_shape_invariance(
    const SuperpotentialSpec& spec, std::span<const double> sample_points,
    double rel_tol, double abs_tol) {
  if (sample_points.size() < 2) {
    throw InvalidArgument("shape-invariance check needs at least two points");
  }
  std::vector<Complex> values;
  values.reserve(sample_points.size());
  Complex sum{};
  for (double x : sample_points) {
    values.push_back(remainder(spec, x));
    sum += values.back();
  }
  ShapeInvarianceResult r;
  r.mean = sum / static_cast<double>(values.size());
  for (const Complex& v : values) {
    r.max_abs_deviation = std::max(r.max_abs_deviation, std::abs(v - r.mean));
  }
  const double scale = std::abs(r.mean);
  r.tolerance = scale < abs_tol ? abs_tol : rel_tol * scale;
  r.holds = r.max_abs_deviation <= r.tolerance;
  return r;
}

ComplexField partner_field(const SuperpotentialSpec& spec, Partner which) {
  return [spec, which](double x) { return eval_partner(spec, which, x); };
}

PartnerPair make_partner_pair(const SuperpotentialSpec& spec, double x_min,
                              double x_max) {
  return PartnerPair{spec, partner_field(spec, Partner::V1),
                     partner_field(spec, Partner::V2),
                     singularities_in(spec, x_min, x_max)};
}

}  // namespace ptsusy
