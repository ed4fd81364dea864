// Timing of system assembly; the kernel term dominates at O(N^3).

#include <benchmark/benchmark.h>

#include <cmath>

#include "fide/galerkin.hpp"

namespace {

fide::Problem smooth_problem() {
  fide::Problem p;
  p.name = "bench";
  p.q = 0.5;
  p.lambda = 0.5;
  p.p = [](double) { return 1.0; };
  p.f = [](double x) { return std::cos(x); };
  p.kernel = [](double x, double t) { return std::sqrt(x * t); };
  return p;
}

void BM_Assemble(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto tp = fide::transform_problem(smooth_problem());
  const fide::fracops::PsiTable psi(n, tp.q);
  for (auto _ : state) benchmark::DoNotOptimize(fide::assemble(tp, n, psi));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Assemble)->RangeMultiplier(2)->Range(4, 64)->Complexity(benchmark::oNCubed);

void BM_Solve(benchmark::State& state) {
  const auto problem = smooth_problem();
  for (auto _ : state) benchmark::DoNotOptimize(fide::solve(problem, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Solve)->DenseRange(4, 16, 4);

}  // namespace

BENCHMARK_MAIN();
