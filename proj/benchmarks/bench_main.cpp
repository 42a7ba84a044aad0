#include <benchmark/benchmark.h>

#include "dcag/csv.hpp"
#include "dcag/ctcs.hpp"
#include "dcag/engine.hpp"
#include "dcag/scenario.hpp"

namespace {

void BM_CtcsStep(benchmark::State& state) {
  dcag::Scenario s = dcag::ctcs::build_ctcs();
  dcag::SliceState slice;
  for (const auto& n : s.graph.nodes) slice.values[n.id] = 0.1;
  for (auto _ : state) {
    auto next = dcag::step(s.graph, slice, s.config);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_CtcsStep);

void BM_CtcsRun120(benchmark::State& state) {
  dcag::Scenario s = dcag::ctcs::build_ctcs();
  for (auto _ : state) {
    auto traj = dcag::run(s);
    benchmark::DoNotOptimize(traj);
  }
}
BENCHMARK(BM_CtcsRun120);

void BM_ParseCtcsScenario(benchmark::State& state) {
  const std::string text = dcag::render_scenario(dcag::ctcs::build_ctcs());
  for (auto _ : state) {
    auto parsed = dcag::parse_scenario(text);
    benchmark::DoNotOptimize(parsed);
  }
}
BENCHMARK(BM_ParseCtcsScenario);

void BM_TrajectoryCsv(benchmark::State& state) {
  dcag::Scenario s = dcag::ctcs::build_ctcs();
  dcag::Trajectory traj = dcag::run(s);
  for (auto _ : state) {
    auto csv = dcag::write_trajectory_csv(traj);
    benchmark::DoNotOptimize(csv);
  }
}
BENCHMARK(BM_TrajectoryCsv);

}  // namespace

BENCHMARK_MAIN();
