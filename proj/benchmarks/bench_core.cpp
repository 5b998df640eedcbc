#include <benchmark/benchmark.h>

#include <vector>

#include "bcb/analysis.hpp"
#include "bcb/dynamics.hpp"
#include "bcb/equilibria.hpp"
#include "bcb/rng.hpp"
#include "bcb/shape.hpp"
#include "bcb/steering.hpp"

using namespace bcb;

namespace {

const ControlParams kParams = ControlParams::common(1.0, 0.5, -0.4, 0.2);

WorldState bench_state() {
  Rng rng(1);
  return sample_world_state(rng, {});
}

void BM_ClosedLoopControl(benchmark::State& state) {
  const WorldState w = bench_state();
  const ClosedLoopController controller{kParams};
  for (auto _ : state) {
    benchmark::DoNotOptimize(controller(w));
  }
}
BENCHMARK(BM_ClosedLoopControl);

void BM_Rk4Step(benchmark::State& state) {
  WorldState w = bench_state();
  const ClosedLoopController controller{kParams};
  for (auto _ : state) {
    w = step(w, controller, 1e-3);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_Rk4Step);

void BM_EffectiveShape(benchmark::State& state) {
  const WorldState w = bench_state();
  for (auto _ : state) {
    benchmark::DoNotOptimize(effective_shape(w));
  }
}
BENCHMARK(BM_EffectiveShape);

void BM_ShapeRhs(benchmark::State& state) {
  const EffectiveShape s = effective_shape(bench_state());
  for (auto _ : state) {
    benchmark::DoNotOptimize(shape_rhs(s, kParams));
  }
}
BENCHMARK(BM_ShapeRhs);

void BM_EmbedShape(benchmark::State& state) {
  const EffectiveShape s = effective_shape(bench_state());
  for (auto _ : state) {
    benchmark::DoNotOptimize(embed_shape(s));
  }
}
BENCHMARK(BM_EmbedShape);

void BM_FitCircle(benchmark::State& state) {
  const auto eq = prop2a_equilibrium(kParams);
  const TrajectoryRecord r = integrate(embed_shape(eq->shape), kParams, 25.0, 1e-3);
  std::vector<Vec3> pts;
  pts.reserve(r.samples.size());
  for (const auto& s : r.samples) pts.push_back(s.state.agent1.r);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_circle_3d(pts));
  }
}
BENCHMARK(BM_FitCircle)->Unit(benchmark::kMicrosecond);

}  // namespace
