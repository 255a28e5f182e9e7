#include <benchmark/benchmark.h>
#include <omp.h>

#include "escprob/montecarlo.hpp"
#include "escprob/quadrature.hpp"
#include "escprob/table3.hpp"

using namespace escprob;

namespace {

const MeshElement& cell(int index) {
  static const auto geometries = table3::geometries();
  return geometries[static_cast<std::size_t>(index)].element;
}

McConfig mc_config(int workers) {
  McConfig c;
  c.particles = 1'000'000;
  c.seed = 1;
  c.workers = workers;
  return c;
}

void mc_serial_reference(benchmark::State& state) {
  const MeshElement& e = cell(static_cast<int>(state.range(0)));
  const WienerStep w(e.dim(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(reference::escape_probability_mc(e, w, mc_config(1)).value);
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}

void mc_parallel(benchmark::State& state) {
  const MeshElement& e = cell(static_cast<int>(state.range(0)));
  const WienerStep w(e.dim(), 1.0);
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(escape_probability_mc(e, w, mc_config(workers)).value);
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}

void det_solver(benchmark::State& state) {
  const MeshElement& e = cell(static_cast<int>(state.range(0)));
  const WienerStep w(e.dim(), 0.01);
  const Execution exec = state.range(1) ? Execution::parallel : Execution::serial;
  for (auto _ : state) benchmark::DoNotOptimize(escape_probability_det(e, w, QuadratureConfig{}, exec).value);
}

void mc_args(benchmark::internal::Benchmark* b) {
  const int max_workers = omp_get_max_threads();
  for (int geometry = 0; geometry < 5; ++geometry) {
    b->Args({geometry, 1});
    if (max_workers > 1) b->Args({geometry, max_workers});
  }
}

}  // namespace

BENCHMARK(mc_serial_reference)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(mc_parallel)->Apply(mc_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(det_solver)->ArgsProduct({{0, 1, 2, 3, 4}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
