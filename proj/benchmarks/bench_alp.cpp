#include <alp/alp.hpp>
#include <benchmark/benchmark.h>

#include <cmath>

using namespace alp;

namespace {

FemSpace soliton_space(Index n) {
  return FemSpace(build_interval_mesh(-15.0, 15.0, n, BoundaryKind::Dirichlet));
}

Field soliton(const FemSpace& fem) {
  return fem.interpolate([](const Point& p) { return exact_one_soliton(p[0], 0.0, 4.0, -5.0); });
}

}  // namespace

static void BM_AssembleTShape(benchmark::State& state) {
  const double cell = 1.0 / static_cast<double>(state.range(0));
  const auto rects = t_shape_rects(TShape{});
  for (auto _ : state) {
    FemSpace fem(build_rect_union_mesh(rects, cell, BoundaryKind::Neumann));
    benchmark::DoNotOptimize(fem.stiffness().nonZeros());
  }
}
BENCHMARK(BM_AssembleTShape)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_Spectrum1D(benchmark::State& state) {
  const FemSpace fem = soliton_space(state.range(0));
  const Field u = soliton(fem);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_schrodinger_spectrum(fem, u, 1.0, 25).eigenvalues.data());
  }
}
BENCHMARK(BM_Spectrum1D)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_AlpStepKdV(benchmark::State& state) {
  const FemSpace fem = soliton_space(500);
  AlpOptions options;
  options.n_modes = state.range(0);
  options.promote_modes = false;
  const ProblemSpec spec{ProblemKind::KdV, 0.0};
  const AlpState start = alp_initialize(fem, options, soliton(fem)).state;
  for (auto _ : state) {
    AlpState s = start;
    benchmark::DoNotOptimize(alp_step(fem, spec, options, s).report.gram_deviation);
  }
}
BENCHMARK(BM_AlpStepKdV)->Arg(10)->Arg(25)->Arg(50)->Unit(benchmark::kMicrosecond);

static void BM_AlpStepFkpp2D(benchmark::State& state) {
  const FemSpace fem(build_rect_union_mesh(t_shape_rects(TShape{}), 1.0 / 12.0, BoundaryKind::Neumann));
  const Field u0 = fem.interpolate([](const Point& p) {
    return std::exp(-50.0 * ((p[0] - 2.5) * (p[0] - 2.5) + (p[1] - 0.5) * (p[1] - 0.5)));
  });
  AlpOptions options;
  options.dt = 2.5e-4;
  options.chi = 40.0;
  options.n_modes = 20;
  options.step_method = StepMethod::Exponential;
  const ProblemSpec spec{ProblemKind::Fkpp, 1e3};
  const AlpState start = alp_initialize(fem, options, u0).state;
  for (auto _ : state) {
    AlpState s = start;
    benchmark::DoNotOptimize(alp_step(fem, spec, options, s).report.gram_deviation);
  }
}
BENCHMARK(BM_AlpStepFkpp2D)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
