#include <benchmark/benchmark.h>

#include "gaitlift/builtins.hpp"
#include "gaitlift/floquet.hpp"
#include "gaitlift/orbit.hpp"
#include "gaitlift/rate_model.hpp"

using namespace gaitlift;

namespace {

RateParams walk() {
  RateParams p;
  p.epsilon = 0.67;
  p.g = 1.8;
  p.input = {1.1};
  p.symbols = {{"alpha", 0.5}, {"beta", -0.6}, {"gamma", -0.8}};
  return p;
}

void BM_Rhs(benchmark::State& state) {
  const Lift lift = biped_ff(static_cast<int>(state.range(0)));
  const RateSystem sys(lift.network, walk());
  const State x = random_initial_state(sys.dim(), 3);
  State dx;
  for (auto _ : state) {
    sys.rhs(0.0, x, dx);
    benchmark::DoNotOptimize(dx.data());
  }
}
BENCHMARK(BM_Rhs)->Arg(0)->Arg(4)->Arg(16);

void BM_Jacobian(benchmark::State& state) {
  const RateSystem sys(biped4(), walk());
  const State x = random_initial_state(sys.dim(), 3);
  Matrix j;
  for (auto _ : state) {
    sys.jacobian(0.0, x, j);
    benchmark::DoNotOptimize(j.data());
  }
}
BENCHMARK(BM_Jacobian);

void BM_FindOrbit(benchmark::State& state) {
  const RateSystem sys(biped4(), walk());
  const State s0 = random_initial_state(sys.dim(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(find_periodic_orbit(sys, s0).period());
}
BENCHMARK(BM_FindOrbit)->Unit(benchmark::kMillisecond);

void BM_Monodromy(benchmark::State& state) {
  const Lift lift = biped_ff(static_cast<int>(state.range(0)));
  const RateSystem sys(lift.network, walk());
  const PeriodicOrbit orbit = find_periodic_orbit(sys, random_initial_state(sys.dim(), 1));
  for (auto _ : state) benchmark::DoNotOptimize(monodromy(orbit, sys).matrix.data());
}
BENCHMARK(BM_Monodromy)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Transverse2Node(benchmark::State& state) {
  const RateSystem sys(biped4(), walk());
  const PeriodicOrbit orbit = find_periodic_orbit(sys, random_initial_state(sys.dim(), 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(transverse_monodromy_2node(orbit, sys, {1, 3}, -0.6).matrix.data());
  }
}
BENCHMARK(BM_Transverse2Node)->Unit(benchmark::kMillisecond);

void BM_Eig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Matrix m = Matrix::Random(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(eig(m).data());
}
BENCHMARK(BM_Eig)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
