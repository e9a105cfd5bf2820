// Serial reference vs OpenMP kernels: the skein state sum and the cube build.

#include "vkinv/homology.hpp"
#include "vkinv/skein.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace vk;

namespace {

// Deterministic random knot diagram with n crossings.
PlanarDiagram diagram(int n) {
  std::mt19937_64 rng(1234 + n);
  for (;;) {
    std::vector<int> slots;
    for (int c = 1; c <= n; ++c) slots.insert(slots.end(), {c, c});
    std::shuffle(slots.begin(), slots.end(), rng);
    GaussCode g;
    g.components.emplace_back();
    std::vector<bool> first(n + 1, true);
    for (int id : slots) {
      const bool over = first[id] == ((id & 1) == 0);
      first[id] = false;
      g.components[0].push_back({over ? Pass::Over : Pass::Under, id, (rng() & 1u) ? Sign::Negative : Sign::Positive});
    }
    try {
      return gauss_to_pd(g);
    } catch (const std::exception&) {
    }
  }
}

void BM_arrow(benchmark::State& st, Engine e) {
  const PlanarDiagram d = diagram(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(arrow(d, e));
}

void BM_parity_arrow(benchmark::State& st, Engine e) {
  const PlanarDiagram d = diagram(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(parity_arrow(d, e));
}

void BM_cube(benchmark::State& st, Engine e) {
  const PlanarDiagram d = diagram(static_cast<int>(st.range(0)));
  CubeOptions o;
  o.engine = e;
  o.check_d2 = false;
  for (auto _ : st) benchmark::DoNotOptimize(build_cube(d, Flavor::Khovanov, o));
}

}  // namespace

BENCHMARK_CAPTURE(BM_arrow, serial, Engine::Serial)->DenseRange(8, 14, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_arrow, parallel, Engine::Parallel)->DenseRange(8, 14, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_parity_arrow, serial, Engine::Serial)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_parity_arrow, parallel, Engine::Parallel)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_cube, serial, Engine::Serial)->DenseRange(6, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_cube, parallel, Engine::Parallel)->DenseRange(6, 8, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
