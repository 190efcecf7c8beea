#include <benchmark/benchmark.h>

#include "holoframe/cauchy.hpp"
#include "holoframe/elliptic.hpp"
#include "holoframe/gauge.hpp"
#include "holoframe/random_fields.hpp"

using namespace holo;

namespace {

void BM_PoissonDirect(benchmark::State& state) {
  auto g = Grid::make(static_cast<int>(state.range(0)));
  const auto rhs = random_matrix(g, 2, 1);
  poisson_dirichlet(rhs);  // factorisation is cached per grid
  for (auto _ : state) benchmark::DoNotOptimize(poisson_dirichlet(rhs));
}
BENCHMARK(BM_PoissonDirect)->Arg(65)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

void BM_PoissonCG(benchmark::State& state) {
  auto g = Grid::make(static_cast<int>(state.range(0)));
  const auto rhs = random_matrix(g, 1, 1);
  const SolveOptions cg{.method = SolveMethod::ConjugateGradient};
  for (auto _ : state) benchmark::DoNotOptimize(poisson_dirichlet(rhs, cg));
}
BENCHMARK(BM_PoissonCG)->Arg(65)->Arg(129)->Unit(benchmark::kMillisecond);

void BM_Cauchy(benchmark::State& state) {
  auto g = Grid::make(static_cast<int>(state.range(0)));
  const CauchyTransform t(g, static_cast<CauchyKernel>(state.range(1)));
  const auto f = random_matrix(g, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(t.apply(f));
}
BENCHMARK(BM_Cauchy)->ArgsProduct({{65, 129, 257}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Coulomb(benchmark::State& state) {
  auto g = Grid::make(static_cast<int>(state.range(0)));
  auto w = random_connection(g, 2, 1);
  normalize_l2(w, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(coulomb_gauge(w));
}
BENCHMARK(BM_Coulomb)->Arg(65)->Arg(129)->Unit(benchmark::kMillisecond);

void BM_Frame(benchmark::State& state) {
  auto g = Grid::make(static_cast<int>(state.range(0)));
  auto w = random_connection(g, 2, 1);
  normalize_l2(w, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(build_holomorphic_frame(w));
}
BENCHMARK(BM_Frame)->Arg(65)->Arg(129)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
