#include <benchmark/benchmark.h>

#include "rigidpen/diagnostics.hpp"
#include "rigidpen/flow_solver.hpp"

namespace {

using namespace rigidpen;

// Desk-scale benchmark geometry at `cells_per_unit` cells per unit length.
SimState benchmark_state(int cells_per_unit, const SolverParams& p) {
  const GridSpec g(2 * cells_per_unit, 6 * cells_per_unit, 1.0 / cells_per_unit);
  return make_initial_state(make_disk_level_set(g, {{1.0, 4.0}, 0.125}), p);
}

void BM_PressureSolve(benchmark::State& state) {
  SolverParams p;
  p.dt = 2e-4;
  const SimState s = benchmark_state(static_cast<int>(state.range(0)), p);
  const CellField h = indicator_from_levelset(s.level, false, p.indicator_width);
  const CellField rho = density_from_indicator(h, p);
  const StaggeredVelocity star = predict_velocity(s.vel, rho, p);
  int iterations = 0;
  for (auto _ : state) {
    const Projection out = project_velocity(star, rho, p);
    iterations = out.stats.iterations;
    benchmark::DoNotOptimize(out.pressure.values.data());
  }
  state.counters["cg_iters"] = iterations;
  state.counters["cells"] = static_cast<double>(rho.values.size());
}
BENCHMARK(BM_PressureSolve)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FullStep(benchmark::State& state) {
  SolverParams p;
  p.dt = 2e-4;
  SimState s = benchmark_state(static_cast<int>(state.range(0)), p);
  for (int n = 0; n < 5; ++n) s = full_step(s, p).state;
  for (auto _ : state) {
    StepResult r = full_step(s, p);
    benchmark::DoNotOptimize(r.state.vel.u.data());
  }
}
BENCHMARK(BM_FullStep)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_DeformationNorm(benchmark::State& state) {
  SolverParams p;
  SimState s = benchmark_state(static_cast<int>(state.range(0)), p);
  s.vel = sample_faces(s.vel.grid, [](Vec2 x) { return Vec2{x.y * x.y, -x.x}; });
  for (auto _ : state) benchmark::DoNotOptimize(deformation_norm_solid(s.vel, s.level));
}
BENCHMARK(BM_DeformationNorm)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
