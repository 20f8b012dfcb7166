// Microbenchmarks for the hot paths: exact-rational validation, transvection
// algebra assembly, curvature-space solves and the numeric holonomy pipeline.
#include <benchmark/benchmark.h>

#include "nrh/constructions.hpp"
#include "nrh/coordgeo.hpp"

using namespace nrh;

static void BM_ValidateDim5(benchmark::State& state) {
  auto m = build_family("dim5-dimL3", FamilyParams{});
  for (auto _ : state) benchmark::DoNotOptimize(validate(m).pass());
}
BENCHMARK(BM_ValidateDim5);

static void BM_TransvectionDim5(benchmark::State& state) {
  auto m = build_family("dim5-so2so2", FamilyParams{});
  for (auto _ : state) benchmark::DoNotOptimize(transvection(m).dim);
}
BENCHMARK(BM_TransvectionDim5);

static void BM_ClassifyDim4(benchmark::State& state) {
  FamilyParams p;
  p.scalars["gamma"] = Rat(-1, 2);
  auto m = build_family("dim4-rot", p);
  for (auto _ : state) benchmark::DoNotOptimize(classify_case(m).case_id);
}
BENCHMARK(BM_ClassifyDim4);

static void BM_CurvatureSpace(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  auto sp = PseudoEuclideanSpace::witt(k);
  std::vector<SkewEndomorphism> gens;
  for (int i = 1; i <= k; ++i)
    gens.push_back(bivector_endo(MultiVector::blade(sp, {0, i})));
  SubalgebraSO g(sp, gens);
  auto t = TorsionTensor::zero(sp);
  for (auto _ : state) benchmark::DoNotOptimize(curvature_space(g, t).homogeneous_basis.size());
}
BENCHMARK(BM_CurvatureSpace)->Arg(2)->Arg(3)->Arg(4);

static void BM_NumericHolonomy(benchmark::State& state) {
  int n = 4;
  DMat A(n, n), F(n, n);
  for (int i = 0; i < n; ++i) A(i, i) = 1.0;
  F(2, 3) = 1.0;
  F(3, 2) = -1.0;
  auto metric = CoordinateMetric::plane_wave(A, F);
  auto torsion = TorsionDescriptor::du_wedge_omega(F);
  auto pts = sample_points(n + 2, 6, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(infinitesimal_holonomy(metric, torsion, pts).rank);
}
BENCHMARK(BM_NumericHolonomy);

BENCHMARK_MAIN();
