#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "oracles.hpp"
#include "ptsusy/scattering.hpp"
#include "ptsusy/states.hpp"

using namespace ptsusy;
using oracle::pi;

namespace {

constexpr double kFactors[] = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};

double max_abs(const Matrix2c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(TransferMatrix, EmptyAndZeroWidthAreIdentity) {
  const Matrix2c id = Matrix2c::Identity();
  EXPECT_LT(max_abs(transfer_matrix(PiecewisePotential::empty(), 1.0) - id), 1e-15);
  const auto zero_width = SegmentPotential::constant(4.0);
  EXPECT_LT(max_abs(fundamental_matrix(zero_width, 0.5, 0.5, 1.0) - id), 1e-15);
}

TEST(Transmission, FreeSpace) {
  const auto r = transmission_reflection(PiecewisePotential::empty(), 1.0);
  EXPECT_EQ(r.r, Complex(0.0, 0.0));
  EXPECT_NEAR(std::abs(r.t - 1.0), 0.0, 1e-15);
  EXPECT_EQ(r.flux_defect, 0.0);
}

TEST(Transmission, SquareBarrierMatchesTextbook) {
  const auto barrier = PiecewisePotential::square(0, 1, 4.0);
  const auto r = transmission_reflection(barrier, 1.0);
  const double want = oracle::barrier_transmission(4, 1, 1);
  EXPECT_NEAR(r.transmittance(), want, 1e-8 * want);
  EXPECT_LE(std::abs(r.flux_defect), 1e-10);
  // matrix form agrees with the result's t
  const Matrix2c m = transfer_matrix(barrier, 1.0);
  EXPECT_NEAR(std::abs(m.determinant() - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(m.determinant() / m(1, 1) - r.t), 0.0, 1e-12);
}

TEST(Transmission, SquareWellMatchesTextbook) {
  const auto well = PiecewisePotential::square(0, 1, -5.0);
  const auto r = transmission_reflection(well, 2.0);
  EXPECT_LE(std::abs(r.flux_defect), 1e-10);
  const double want = oracle::well_transmission(-5, 1, 2);
  EXPECT_NEAR(r.transmittance(), want, 1e-8 * want);
}

TEST(Transmission, OracleAgreementAcrossSweep) {
  for (double v0 : {4.0, 1.0, 25.0}) {
    for (double a : {0.3, 1.0, 2.0}) {
      const auto barrier = PiecewisePotential::square(-a / 2, a / 2, v0);
      for (double f : kFactors) {
        if (f == 1.0) continue;
        const double e = f * v0;
        const double want = oracle::barrier_transmission(v0, a, e);
        const auto r = transmission_reflection(barrier, e);
        EXPECT_NEAR(r.transmittance(), want, 1e-8 * want)
            << "V0=" << v0 << " a=" << a << " E=" << e;
      }
    }
  }
}

TEST(Transmission, ResonantEnergyUsesLinearBranch) {
  const double v0 = 4.0, a = 1.0;
  const auto r = transmission_reflection(PiecewisePotential::square(0, a, v0), v0);
  // limit of the textbook form at E = V0
  const double want = 1.0 / (1.0 + v0 * a * a / 4.0);
  EXPECT_NEAR(r.transmittance(), want, 1e-12);
  EXPECT_LE(std::abs(r.flux_defect), 1e-10);
  // continuity with nearby energies
  const auto near = transmission_reflection(PiecewisePotential::square(0, a, v0),
                                            v0 * (1 + 1e-7));
  EXPECT_NEAR(near.transmittance(), want, 1e-6);
}

TEST(FluxProperty, RealPotentialsConserveFlux) {
  oracle::Gen g(55);
  for (int trial = 0; trial < 200; ++trial) {
    const int pieces = g.integer(1, 6);
    std::vector<double> bp = {g.uniform(-3, 0)};
    std::vector<SegmentPotential> segs;
    double vmax = 0.1;
    for (int i = 0; i < pieces; ++i) {
      bp.push_back(bp.back() + g.uniform(0.05, 1.0));
      const double v = g.uniform(-8, 8);
      vmax = std::max(vmax, std::abs(v));
      if (g.integer(0, 3) == 0) {
        const double c = g.uniform(0, 5);
        segs.push_back(SegmentPotential::smooth(
            [v, c](double x) { return Complex{v * std::cos(c * x), 0.0}; }, true));
      } else {
        segs.push_back(SegmentPotential::constant(v));
      }
    }
    const auto pot = PiecewisePotential::make(bp, segs);
    ASSERT_TRUE(pot.all_real());
    for (double f : kFactors) {
      const auto r = transmission_reflection(pot, f * vmax);
      ASSERT_LE(std::abs(r.flux_defect), 1e-10) << "trial " << trial;
    }
  }
}

TEST(CompositionProperty, ProductOfAdjacentStructures) {
  oracle::Gen g(8);
  for (int trial = 0; trial < 100; ++trial) {
    const double x0 = g.uniform(-2, 0), x1 = x0 + g.uniform(0.1, 1),
                 x2 = x1 + g.uniform(0.1, 1);
    const Complex v1{g.uniform(-5, 5), g.uniform(-1, 1)};
    const Complex v2{g.uniform(-5, 5), g.uniform(-1, 1)};
    const double e = g.uniform(0.2, 6);
    const auto left = PiecewisePotential::make(
        {x0, x1}, {SegmentPotential::constant(v1)});
    const auto right = PiecewisePotential::make(
        {x1, x2}, {SegmentPotential::constant(v2)});
    const auto both = PiecewisePotential::make(
        {x0, x1, x2},
        {SegmentPotential::constant(v1), SegmentPotential::constant(v2)});
    const Matrix2c product = transfer_matrix(right, e) * transfer_matrix(left, e);
    const Matrix2c whole = transfer_matrix(both, e);
    ASSERT_LT(max_abs(product - whole), 1e-10 * std::max(1.0, max_abs(whole)));
  }
}

TEST(SliceConvergence, SecondOrderOnSmoothComplexSegment) {
  const auto spec = SuperpotentialSpec::make(Family::PlaneRight, 1, 1);
  const auto seg = SegmentPotential::smooth(partner_field(spec, Partner::V1));
  const double e = 1.3;
  const Matrix2c ref = fundamental_matrix(seg, 0, 2 * pi, e, 64000);
  const double e1 = max_abs(fundamental_matrix(seg, 0, 2 * pi, e, 500) - ref);
  const double e2 = max_abs(fundamental_matrix(seg, 0, 2 * pi, e, 1000) - ref);
  const double e3 = max_abs(fundamental_matrix(seg, 0, 2 * pi, e, 2000) - ref);
  EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.15);
  EXPECT_NEAR(std::log2(e2 / e3), 2.0, 0.15);
}

TEST(SliceConvergence, PropagatesTheZeroEnergyGroundState) {
  // psi^R solves -psi'' + V1 psi = 0, so the slice propagator must carry it.
  for (Family f : {Family::PlaneRight, Family::PlaneLeft}) {
    const WaveFunctionSpec psi{f, 1, 1};
    const auto seg = SegmentPotential::smooth(
        partner_field(psi.superpotential(), Partner::V1));
    const double a = -0.7, b = 2.4;
    const Eigen::Vector2cd start{eval_wavefunction(psi, a),
                                 eval_wavefunction_derivative(psi, a)};
    const Eigen::Vector2cd want{eval_wavefunction(psi, b),
                                eval_wavefunction_derivative(psi, b)};
    const Eigen::Vector2cd got = fundamental_matrix(seg, a, b, 0.0, 4000) * start;
    EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-5);
  }
}

TEST(PlaneSweep, FlatPartnerIsAConstantWell) {
  const double k = 1.0;
  const auto spec = SuperpotentialSpec::make(Family::PlaneRight, k, 0);
  const std::vector<double> energies = {0.3, 1.0, 2.5};
  const auto results = plane_partner_sweep(spec, Partner::V1, 0, 1, energies);
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const double want = oracle::well_transmission(-k * k, 1, energies[i]);
    EXPECT_NEAR(results[i].transmittance(), want, 1e-8 * want);
    EXPECT_LE(std::abs(results[i].flux_defect), 1e-10);
  }
}

TEST(PlaneSweep, ComplexWindowConvergesAndBreaksFlux) {
  const auto spec = SuperpotentialSpec::make(Family::PlaneRight, 1, 1);
  const std::vector<double> energies = {1.0};
  const auto r = plane_partner_sweep(spec, Partner::V1, 0, 2 * pi, energies)[0];
  EXPECT_TRUE(std::isfinite(r.flux_defect));
  EXPECT_GT(std::abs(r.flux_defect), 1e-6);
  EXPECT_GE(r.slices, kDefaultSlices);
  // one more doubling changes T by less than the sweep tolerance
  const auto window = PiecewisePotential::make(
      {0, 2 * pi},
      {SegmentPotential::smooth(partner_field(spec, Partner::V1))});
  const double finer = transmission_reflection(window, 1.0, 2 * r.slices).transmittance();
  EXPECT_LT(std::abs(finer - r.transmittance()), 1e-6);
}

TEST(PlaneSweep, LeftOnWindowEqualsRightOnMirroredWindow) {
  for (double q : {0.5, 1.0, 2.0}) {
    for (double k : {1.0, 2.0}) {
      const auto right = SuperpotentialSpec::make(Family::PlaneRight, k, q);
      const auto left = SuperpotentialSpec::make(Family::PlaneLeft, k, q);
      const std::vector<double> energies = {0.2 * k * k, k * k, 4.0 * k * k};
      const double a = pi / k;
      for (Partner p : {Partner::V1, Partner::V2}) {
        const auto tl = plane_partner_sweep(left, p, -a, a, energies);
        const auto tr =
            plane_partner_sweep(right, p, pi / k - a, pi / k + a, energies);
        for (std::size_t i = 0; i < energies.size(); ++i) {
          EXPECT_NEAR(tl[i].transmittance(), tr[i].transmittance(), 1e-8)
              << "q=" << q << " k=" << k << " E=" << energies[i];
        }
      }
    }
  }
}

TEST(PlaneSweep, Errors) {
  const auto well = SuperpotentialSpec::make(Family::CotangentWell, 1, 1);
  const auto plane = SuperpotentialSpec::make(Family::PlaneRight, 1, 1);
  const std::vector<double> ok = {1.0};
  const std::vector<double> bad = {0.0};
  EXPECT_THROW(plane_partner_sweep(well, Partner::V1, 0, 1, ok), InvalidArgument);
  EXPECT_THROW(plane_partner_sweep(plane, Partner::V1, 1, 0, ok), InvalidArgument);
  EXPECT_THROW(plane_partner_sweep(plane, Partner::V1, 0, 1, bad), InvalidArgument);
  EXPECT_THROW(plane_partner_sweep(plane, Partner::V1, 0, 1, ok, {500, 1e-6, 6}),
               InvalidArgument);
  EXPECT_THROW(plane_partner_sweep(plane, Partner::V1, 0, 2 * pi, ok,
                                   {kDefaultSlices, 1e-16, 0}),
               SliceTooCoarse);
}

TEST(TransferMatrix, Errors) {
  const auto barrier = PiecewisePotential::square(0, 1, 4.0);
  EXPECT_THROW(transfer_matrix(barrier, 0.0), InvalidArgument);
  EXPECT_THROW(transfer_matrix(barrier, 1.0, 0), InvalidArgument);
  EXPECT_THROW(transfer_matrix(PiecewisePotential::square(0, 1, 1e7), 1.0),
               EvanescentOverflow);
  EXPECT_THROW(PiecewisePotential::make({1.0, 0.0}, {SegmentPotential::constant(1)}),
               InvalidArgument);
  EXPECT_THROW(PiecewisePotential::make({0.0, 1.0}, {}), InvalidArgument);
  EXPECT_THROW(SegmentPotential::smooth(nullptr), InvalidArgument);
}

TEST(Csv, HeaderAndRoundTripFormatting) {
  const auto barrier = PiecewisePotential::square(0, 1, 4.0);
  std::vector<ScatteringResult> rows = {transmission_reflection(barrier, 1.0),
                                        transmission_reflection(barrier, 8.0)};
  const std::string csv = to_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "energy,re_r,im_r,re_t,im_t,R,T,flux_defect");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  const auto second = csv.substr(csv.find('\n') + 1);
  const double t_back = std::stod(second.substr(second.find(',', 0) + 1));
  EXPECT_EQ(t_back, rows[0].r.real());
  EXPECT_EQ(to_csv(rows), csv);
}
