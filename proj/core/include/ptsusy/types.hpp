#pragma once

#include <complex>
#include <functional>
#include <string_view>

namespace ptsusy {

using Complex = std::complex<double>;

/// Scalar complex-valued function of position. Potentials, superpotentials
/// and wave functions are all handed around in this form.
using ComplexField = std::function<Complex(double)>;

/// Closed-form superpotential families. The well families live on a box,
/// the plane families on the whole line.
enum class Family { CotangentWell, TangentWell, PlaneRight, PlaneLeft };

/// Which member of a partner pair: V1 = W^2 - W', V2 = W^2 + W'.
enum class Partner { V1, V2 };

constexpr bool is_well(Family f) noexcept {
  return f == Family::CotangentWell || f == Family::TangentWell;
}

constexpr bool is_plane(Family f) noexcept { return !is_well(f); }

std::string_view to_string(Family f) noexcept;
std::string_view to_string(Partner p) noexcept;

/// Parses the names produced by to_string plus the short aliases
/// "cot", "tan", "right", "left". Throws InvalidArgument.
Family parse_family(std::string_view name);
Partner parse_partner(std::string_view name);

}  // namespace ptsusy
