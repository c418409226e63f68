#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ptsusy/ptsusy.hpp"

using namespace ptsusy;
using std::numbers::pi;

static void RealPath(benchmark::State& state) {
  const auto spec = SuperpotentialSpec::make(Family::CotangentWell, 1, 0);
  const auto h = discretize(partner_field(spec, Partner::V2),
                            Grid1D::make(1e-3, pi - 1e-3, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(h, 5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(RealPath)->RangeMultiplier(2)->Range(500, 8000)->Complexity()->Unit(benchmark::kMillisecond);

static void ComplexPath(benchmark::State& state) {
  const auto spec = SuperpotentialSpec::make(Family::CotangentWell, 1, 1);
  const auto h = discretize(partner_field(spec, Partner::V1),
                            Grid1D::make(1e-2, pi - 1e-2, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(h, 5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(ComplexPath)->RangeMultiplier(2)->Range(500, 4000)->Complexity()->Unit(benchmark::kMillisecond);

// the acceptance run: three grids plus extrapolation
static void ConvergedFlatWell(benchmark::State& state) {
  const ComplexField flat = [](double) { return Complex{-1.0, 0.0}; };
  const std::vector<int> sizes = {1000, 2000, 4000};
  for (auto _ : state) benchmark::DoNotOptimize(converged_spectrum(flat, 0, pi, sizes, 5));
}
BENCHMARK(ConvergedFlatWell)->Unit(benchmark::kMillisecond);

static void SquareBarrier(benchmark::State& state) {
  const auto barrier = PiecewisePotential::square(0, 1, 4.0);
  double e = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(transmission_reflection(barrier, e));
    e = e < 40 ? e + 0.25 : 0.5;
  }
}
BENCHMARK(SquareBarrier);

static void PlaneSweep(benchmark::State& state) {
  const auto spec = SuperpotentialSpec::make(Family::PlaneRight, 1, 0.5);
  std::vector<double> energies;
  for (int i = 0; i < static_cast<int>(state.range(0)); ++i) energies.push_back(0.1 + 0.4 * i);
  for (auto _ : state)
    benchmark::DoNotOptimize(plane_partner_sweep(spec, Partner::V1, 0, 2 * pi, energies));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(PlaneSweep)->Arg(5)->Arg(25)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
