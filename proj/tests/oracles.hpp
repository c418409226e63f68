#pragma once

// Independent reference formulas. Nothing here calls into ptsusy; the
// superpotentials are written out by hand, partners come from W^2 -/+ W'
// (not the expanded closed forms the library uses) and the transmission
// coefficients are the textbook square-barrier results with hbar^2/2m = 1.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using cld = std::complex<long double>;
inline constexpr double pi = std::numbers::pi;

enum class Fam { Cot, Tan, Right, Left };

struct WDW {
  cld w;
  cld dw;
};

// W and W' for alpha = a, evaluated in long double.
inline WDW superpotential(Fam f, long double k, long double q, long double a,
                          long double x) {
  const cld I{0.0L, 1.0L};
  switch (f) {
    case Fam::Cot: {
      const long double s = 1.0L / std::sin(a * x), c = std::cos(a * x) * s;
      return {-k * c + I * q * s, k * a * s * s - I * q * a * s * c};
    }
    case Fam::Tan: {
      const long double s = 1.0L / std::cos(a * x), t = std::sin(a * x) * s;
      return {k * t + I * q * s, k * a * s * s + I * q * a * s * t};
    }
    case Fam::Right: {
      const cld e = std::exp(-I * a * x);
      return {-I * k + q * e, -I * a * q * e};
    }
    case Fam::Left: {
      const cld e = std::exp(I * a * x);
      return {I * k + q * e, I * a * q * e};
    }
  }
  return {};
}

// sign = -1 for V1, +1 for V2.
inline cd partner(Fam f, double k, double q, double a, int sign, double x) {
  const WDW r = superpotential(f, k, q, a, x);
  const cld v = r.w * r.w + static_cast<long double>(sign) * r.dw;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// Ground states written out directly: psi = exp(-int W).
inline cd wavefunction(Fam f, double k, double q, double x) {
  const cd I{0.0, 1.0};
  switch (f) {
    case Fam::Cot:
      return std::sin(k * x) *
             std::exp(-I * (q / k) * std::log(std::tan(k * x / 2)));
    case Fam::Tan:
      return std::cos(k * x) *
             std::exp(-I * (q / k) * std::log(std::tan(k * x / 2 + pi / 4)));
    case Fam::Right:
      return std::exp(I * k * x - I * q * std::exp(-I * k * x) / k);
    case Fam::Left:
      return std::exp(-I * k * x + I * q * std::exp(I * k * x) / k);
  }
  return {};
}

// Square barrier of height v0 > 0 and width a at energy e != v0.
inline double barrier_transmission(double v0, double a, double e) {
  if (e < v0) {
    const double kappa = std::sqrt(v0 - e);
    const double s = std::sinh(kappa * a);
    return 1.0 / (1.0 + v0 * v0 * s * s / (4.0 * e * (v0 - e)));
  }
  const double kp = std::sqrt(e - v0);
  const double s = std::sin(kp * a);
  return 1.0 / (1.0 + v0 * v0 * s * s / (4.0 * e * (e - v0)));
}

// Square well, v0 < 0.
inline double well_transmission(double v0, double a, double e) {
  const double kp = std::sqrt(e - v0);
  const double s = std::sin(kp * a);
  return 1.0 / (1.0 + v0 * v0 * s * s / (4.0 * e * (e - v0)));
}

// Dirichlet Laplacian eigenvalues on n interior nodes of spacing h.
inline double fd_free_eigenvalue(int j, int n, double h) {
  return (2.0 - 2.0 * std::cos(j * pi / (n + 1))) / (h * h);
}

// Hand-rolled generators for property tests; fixed seeds keep runs
// reproducible.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
  }
  int integer(int a, int b) {
    return std::uniform_int_distribution<int>(a, b)(rng);
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))];
  }
};

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] = a + (b - a) * j / (n - 1);
  }
  return out;
}

}  // namespace oracle
