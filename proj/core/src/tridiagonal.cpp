#include "ptsusy/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "ptsusy/errors.hpp"

namespace ptsusy::tridiagonal {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_shape(std::size_t n, std::size_t n_off) {
  if (n == 0) throw InvalidArgument("empty tridiagonal matrix");
  if (n_off + 1 != n) {
    throw InvalidArgument(fmt::format(
        "tridiagonal shape mismatch: {} diagonal, {} off-diagonal", n, n_off));
  }
}

double matrix_scale(std::span<const Complex> diag,
                    std::span<const Complex> off) {
  double s = 0.0;
  for (const Complex& d : diag) s = std::max(s, std::abs(d));
  for (const Complex& e : off) s = std::max(s, 2.0 * std::abs(e));
  return std::max(s, 1.0);
}

// LU with partial pivoting of T - shift (LAPACK gttrf layout), then solves
// in place. Zero pivots are replaced by `tiny`.
class ShiftedSolver {
 public:
  ShiftedSolver(std::span<const Complex> diag, std::span<const Complex> off,
                Complex shift, double tiny)
      : n_(diag.size()),
        dl_(off.begin(), off.end()),
        d_(diag.begin(), diag.end()),
        du_(off.begin(), off.end()),
        du2_(n_ > 2 ? n_ - 2 : 0),
        swapped_(n_ > 1 ? n_ - 1 : 0, false) {
    for (Complex& v : d_) v -= shift;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] == Complex{}) d_[i] = tiny;
        const Complex fact = dl_[i] / d_[i];
        dl_[i] = fact;
        d_[i + 1] -= fact * du_[i];
      } else {
        const Complex fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const Complex temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n_) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        swapped_[i] = true;
      }
    }
    if (d_[n_ - 1] == Complex{}) d_[n_ - 1] = tiny;
  }

  void solve(std::vector<Complex>& b) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (!swapped_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const Complex temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl_[i] * b[i];
      }
    }
    b[n_ - 1] /= d_[n_ - 1];
    if (n_ > 1) b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
    for (std::size_t i = n_ >= 3 ? n_ - 2 : 0; i-- > 0;) {
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
  }

 private:
  std::size_t n_;
  std::vector<Complex> dl_, d_, du_, du2_;
  std::vector<bool> swapped_;
};

void normalize(std::vector<Complex>& v) {
  double norm = 0.0;
  for (const Complex& c : v) norm += std::norm(c);
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm)) return;
  for (Complex& c : v) c /= norm;
}

std::vector<Complex> apply(std::span<const Complex> diag,
                           std::span<const Complex> off,
                           std::span<const Complex> v) {
  const std::size_t n = diag.size();
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s = diag[i] * v[i];
    if (i > 0) s += off[i - 1] * v[i - 1];
    if (i + 1 < n) s += off[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(std::span<const double> diag,
                                          std::span<const double> off) {
  require_shape(diag.size(), off.size());
  const auto n = static_cast<Eigen::Index>(diag.size());
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), n);
  Eigen::VectorXd e(n > 0 ? n - 1 : 0);
  for (Eigen::Index i = 0; i + 1 < n; ++i) e[i] = off[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  if (solver.info() == Eigen::Success) {
    const Eigen::VectorXd& values = solver.eigenvalues();
    return {values.data(), values.data() + values.size()};
  }
  // Eigen's QL occasionally stalls (seen on a 50-node csc^2 well); the
  // complex-symmetric QL handles the same matrix.
  const std::vector<Complex> cd(diag.begin(), diag.end());
  const std::vector<Complex> ce(off.begin(), off.end());
  std::vector<double> values;
  try {
    for (const Complex& v : complex_symmetric_eigenvalues(cd, ce)) {
      values.push_back(v.real());
    }
  } catch (const ConvergenceFailure& e) {
    throw ConvergenceFailure(fmt::format(
        "symmetric tridiagonal QL did not converge (n = {}); fallback: {}", n,
        e.what()));
  }
  std::sort(values.begin(), values.end());
  return values;
}

std::vector<Complex> complex_symmetric_eigenvalues(std::span<const Complex> diag,
                                                   std::span<const Complex> off,
                                                   int max_sweeps) {
  require_shape(diag.size(), off.size());
  const std::size_t n = diag.size();
  std::vector<Complex> d(diag.begin(), diag.end());
  std::vector<Complex> e(n, Complex{});
  std::copy(off.begin(), off.end(), e.begin());

  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m == l) break;
      if (sweeps++ == max_sweeps) {
        throw ConvergenceFailure(fmt::format(
            "complex QL: level {} of {} not converged after {} sweeps "
            "(|e| = {:.3e}, d = {:.6g}{:+.6g}i)",
            l, n, max_sweeps, std::abs(e[l]), d[l].real(), d[l].imag()));
      }
      // Wilkinson-type shift from the leading 2x2 block; the root is taken
      // on the branch that keeps |g + r| large.
      Complex g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      Complex r = std::sqrt(g * g + 1.0);
      if ((std::conj(g) * r).real() < 0.0) r = -r;
      g = d[m] - d[l] + e[l] / (g + r);
      Complex s = 1.0;
      Complex c = 1.0;
      Complex p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        const Complex f = s * e[i];
        const Complex b = c * e[i];
        r = std::sqrt(f * f + g * g);
        e[i + 1] = r;
        const double size = std::abs(f) + std::abs(g);
        if (size == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        if (std::abs(r) < 1e-10 * size) {
          throw ConvergenceFailure(fmt::format(
              "complex QL: rotation breakdown at level {} (|r| / scale = "
              "{:.3e})",
              l, std::abs(r) / size));
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  for (const Complex& v : d) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ConvergenceFailure("complex QL produced a non-finite eigenvalue");
    }
  }
  return d;
}

double residual_norm(std::span<const Complex> diag,
                     std::span<const Complex> off,
                     std::span<const Complex> v, Complex lambda) {
  const std::vector<Complex> tv = apply(diag, off, v);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += std::norm(tv[i] - lambda * v[i]);
    den += std::norm(v[i]);
  }
  return std::sqrt(num / den);
}

Eigenpair refine(std::span<const Complex> diag, std::span<const Complex> off,
                 Complex estimate, double target_residual) {
  require_shape(diag.size(), off.size());
  const std::size_t n = diag.size();
  const double tiny = kEps * matrix_scale(diag, off);

  // Fixed, non-symmetric start vector so no eigenvector is orthogonal to it
  // by parity.
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = 1.0 + 0.5 * std::sin(0.37 * static_cast<double>(i) + 0.1);
  }
  normalize(v);

  Eigenpair best{estimate, v, std::numeric_limits<double>::infinity()};
  Complex lambda = estimate;
  for (int pass = 0; pass < 4; ++pass) {
    const ShiftedSolver solver(diag, off, lambda, tiny);
    for (int it = 0; it < 3; ++it) {
      solver.solve(v);
      normalize(v);
    }
    const double res = residual_norm(diag, off, v, lambda);
    if (res < best.residual) best = Eigenpair{lambda, v, res};
    if (res <= target_residual) break;
    // Rayleigh quotient for a complex symmetric matrix: left and right
    // eigenvectors coincide up to transposition, so no conjugation.
    const std::vector<Complex> tv = apply(diag, off, v);
    Complex num{};
    Complex den{};
    for (std::size_t i = 0; i < n; ++i) {
      num += v[i] * tv[i];
      den += v[i] * v[i];
    }
    if (std::abs(den) < 1e-8) break;
    lambda = num / den;
  }
  return best;
}

}  // namespace ptsusy::tridiagonal
