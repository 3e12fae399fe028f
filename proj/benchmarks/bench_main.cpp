#include "udv/adrc.hpp"
#include "udv/fuzzy.hpp"
#include "udv/gait.hpp"
#include "udv/grader.hpp"
#include "udv/harness.hpp"
#include "udv/kinematics.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace udv;

void BM_MamdaniInfer(benchmark::State& state) {
  MamdaniEngine engine(FuzzyPartition::seven(-1.0, 1.0),
                       FuzzyPartition::seven(-1.0, 1.0),
                       FuzzyPartition::seven(-1.0, 1.0),
                       rules_basis_controller());
  double x = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.infer(x, -x));
    x += 1e-4;
    if (x > 1.0) x = -1.0;
  }
}
BENCHMARK(BM_MamdaniInfer);

void BM_AdrcTick(benchmark::State& state) {
  AdrcController adrc = make_adrc_x();
  double y = 0.0;
  for (auto _ : state) {
    const double u = adrc.step(0.05, y, 0.001);
    y += 1e-6 * u;
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_AdrcTick);

void BM_Classify(benchmark::State& state) {
  const ClusterModel model = builtin_model(Axis::kX);
  double e = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify({e, e / 2.0}, model));
    e += 1e-5;
    if (e > 0.12) e = 0.0;
  }
}
BENCHMARK(BM_Classify);

void BM_HipAt(benchmark::State& state) {
  GaitParams gait;
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hip_at(gait, t));
    t += 0.001;
    if (t > 60.0) t = 0.0;
  }
}
BENCHMARK(BM_HipAt);

void BM_LegIk(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        leg_ik({x, 0.9}, {0.1, 0.0}, 0.5, 0.5, Side::kRight));
    x += 1e-4;
    if (x > 0.2) x = 0.0;
  }
}
BENCHMARK(BM_LegIk);

void BM_WalkingTick(benchmark::State& state) {
  // Amortized cost of one closed-loop walking tick.
  WalkingScenario scenario;
  scenario.duration = 1.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_walking(scenario));
  }
  state.SetItemsProcessed(state.iterations() * 1200);
}
BENCHMARK(BM_WalkingTick)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
