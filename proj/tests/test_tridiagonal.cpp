#include <gtest/gtest.h>

#include <algorithm>
#include <Eigen/Dense>

#include "oracles.hpp"
#include "ptsusy/errors.hpp"
#include "ptsusy/tridiagonal.hpp"

using namespace ptsusy;
namespace td = ptsusy::tridiagonal;

namespace {

bool by_real(const Complex& a, const Complex& b) {
  return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
}

// Dense eigenvalues as an independent reference.
std::vector<Complex> dense_eigenvalues(const std::vector<Complex>& d,
                                       const std::vector<Complex>& e) {
  const auto n = static_cast<Eigen::Index>(d.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = d[static_cast<std::size_t>(i)];
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = e[static_cast<std::size_t>(i)];
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<Complex> out(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + n);
  std::sort(out.begin(), out.end(), by_real);
  return out;
}

}  // namespace

TEST(Tridiagonal, FreeParticleClosedForm) {
  for (int n : {3, 10, 200}) {
    const double h = oracle::pi / (n + 1);
    std::vector<double> d(static_cast<std::size_t>(n), 2 / (h * h));
    std::vector<double> e(static_cast<std::size_t>(n - 1), -1 / (h * h));
    const auto real = td::symmetric_eigenvalues(d, e);
    std::vector<Complex> cd(d.begin(), d.end()), ce(e.begin(), e.end());
    auto cplx = td::complex_symmetric_eigenvalues(cd, ce);
    std::sort(cplx.begin(), cplx.end(), by_real);
    for (int j = 1; j <= n; ++j) {
      const double want = oracle::fd_free_eigenvalue(j, n, h);
      const auto idx = static_cast<std::size_t>(j - 1);
      EXPECT_NEAR(real[idx], want, 1e-12 * want);
      EXPECT_NEAR(std::abs(cplx[idx] - want), 0.0, 1e-11 * want);
    }
  }
}

TEST(Tridiagonal, ComplexPathAgreesWithRealPathOnRandomMatrices) {
  oracle::Gen g(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = g.integer(2, 300);
    std::vector<double> d, e;
    for (int i = 0; i < n; ++i) d.push_back(g.uniform(-10, 10));
    for (int i = 0; i + 1 < n; ++i) e.push_back(g.uniform(-3, 3));
    const auto real = td::symmetric_eigenvalues(d, e);
    std::vector<Complex> cd(d.begin(), d.end()), ce(e.begin(), e.end());
    auto cplx = td::complex_symmetric_eigenvalues(cd, ce);
    std::sort(cplx.begin(), cplx.end(), by_real);
    ASSERT_EQ(cplx.size(), real.size());
    for (std::size_t i = 0; i < real.size(); ++i) {
      ASSERT_NEAR(std::abs(cplx[i] - real[i]), 0.0, 1e-10) << "n=" << n;
    }
  }
}

TEST(Tridiagonal, ComplexSymmetricAgreesWithDenseSolver) {
  oracle::Gen g(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = g.integer(2, 60);
    std::vector<Complex> d, e;
    for (int i = 0; i < n; ++i) d.emplace_back(g.uniform(-5, 5), g.uniform(-5, 5));
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(g.uniform(-2, 2), g.uniform(-1, 1));
    auto mine = td::complex_symmetric_eigenvalues(d, e);
    std::sort(mine.begin(), mine.end(), by_real);
    const auto ref = dense_eigenvalues(d, e);
    // match greedily: ordering of near-equal real parts can differ
    std::vector<bool> used(ref.size(), false);
    for (const Complex& v : mine) {
      double best = 1e300;
      std::size_t at = 0;
      for (std::size_t j = 0; j < ref.size(); ++j) {
        if (!used[j] && std::abs(ref[j] - v) < best) {
          best = std::abs(ref[j] - v);
          at = j;
        }
      }
      used[at] = true;
      ASSERT_LT(best, 1e-9) << "n=" << n;
    }
  }
}

TEST(Tridiagonal, RealPathSurvivesStalledQl) {
  // 50-node discretization of 2 csc^2(x) - 1: Eigen's QL reports
  // NoConvergence here, the fallback must still deliver the spectrum.
  const int n = 50;
  const double h = oracle::pi / (n + 1);
  std::vector<double> d, e(static_cast<std::size_t>(n - 1), -1 / (h * h));
  for (int j = 1; j <= n; ++j) {
    const double s = std::sin(j * h);
    d.push_back(2 / (h * h) + 2 / (s * s) - 1);
  }
  const auto got = td::symmetric_eigenvalues(d, e);
  const auto ref = dense_eigenvalues(std::vector<Complex>(d.begin(), d.end()),
                                     std::vector<Complex>(e.begin(), e.end()));
  ASSERT_EQ(got.size(), ref.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_NEAR(got[i], ref[i].real(), 1e-9 * std::max(1.0, std::abs(got[i])));
  }
}

TEST(Tridiagonal, RefinedPairsMeetResidualTarget) {
  oracle::Gen g(7);
  const int n = 400;
  std::vector<Complex> d, e(static_cast<std::size_t>(n - 1), Complex{-1.0, 0});
  for (int i = 0; i < n; ++i) d.emplace_back(2.0 + g.uniform(-1, 1), g.uniform(-0.5, 0.5));
  const auto values = td::complex_symmetric_eigenvalues(d, e);
  for (std::size_t i = 0; i < values.size(); i += 37) {
    const double target = 1e-8 * std::max(1.0, std::abs(values[i]));
    const auto pair = td::refine(d, e, values[i], target);
    EXPECT_LE(pair.residual, target);
    EXPECT_NEAR(td::residual_norm(d, e, pair.vector, pair.value),
                pair.residual, 1e-14);
    EXPECT_NEAR(std::abs(pair.value - values[i]), 0.0, 1e-8);
  }
}

TEST(Tridiagonal, Errors) {
  const std::vector<Complex> empty;
  EXPECT_THROW(td::complex_symmetric_eigenvalues(empty, empty), InvalidArgument);
  const std::vector<Complex> d = {1.0, 2.0, 3.0};
  const std::vector<Complex> bad = {1.0};
  EXPECT_THROW(td::complex_symmetric_eigenvalues(d, bad), InvalidArgument);
  const std::vector<Complex> e = {Complex{0.5, 0.3}, Complex{0.7, -0.2}};
  EXPECT_THROW(td::complex_symmetric_eigenvalues(d, e, 0), ConvergenceFailure);
}
