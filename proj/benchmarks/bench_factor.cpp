#include <benchmark/benchmark.h>

#include "specfact/harness.hpp"
#include "specfact/msf.hpp"
#include "specfact/scalar.hpp"

using namespace specfact;

namespace {

void BM_PolymatDet(benchmark::State& state) {
    const int r = static_cast<int>(state.range(0));
    const int n = static_cast<int>(state.range(1));
    const LaurentPolyMatrix s = random_spd({r, n, 1, 0.0});
    for (auto _ : state) benchmark::DoNotOptimize(polymat_det(s));
}
BENCHMARK(BM_PolymatDet)->Args({4, 30})->Args({8, 10})->Args({15, 20});

void BM_ScalarFactor(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const LaurentPolyMatrix s = random_spd({1, n, 3, 0.5});
    const LaurentPoly d = s.entry(0, 0);
    for (auto _ : state) benchmark::DoNotOptimize(scalar_factor(d, 4096, 8));
}
BENCHMARK(BM_ScalarFactor)->Arg(20)->Arg(100);

void BM_Jle1(benchmark::State& state) {
    const int r = static_cast<int>(state.range(0));
    const int n = static_cast<int>(state.range(1));
    const LaurentPolyMatrix s = random_spd({r, n, 0, 0.0});
    AlgoParams p;
    p.scalarIters = 10;
    for (auto _ : state) benchmark::DoNotOptimize(jle1(s, p).err);
}
BENCHMARK(BM_Jle1)->Args({4, 8})->Args({8, 10})->Unit(benchmark::kMillisecond);

void BM_Jle1Displacement(benchmark::State& state) {
    const LaurentPolyMatrix s = random_spd({8, 10, 0, 0.0});
    AlgoParams p;
    p.scalarIters = 10;
    p.useDisplacementSolver = true;
    for (auto _ : state) benchmark::DoNotOptimize(jle1(s, p).err);
}
BENCHMARK(BM_Jle1Displacement)->Unit(benchmark::kMillisecond);

void BM_Jle2(benchmark::State& state) {
    const LaurentPolyMatrix s = random_spd({10, 10, 0, 1.0});
    AlgoParams p;
    p.kappa = 11;
    for (auto _ : state) benchmark::DoNotOptimize(jle2(s, p).err);
}
BENCHMARK(BM_Jle2)->Unit(benchmark::kMillisecond);

void BM_Jle3(benchmark::State& state) {
    const int r = static_cast<int>(state.range(0));
    const int n = static_cast<int>(state.range(1));
    const LaurentPolyMatrix s = random_spd({r, n, 0, 0.0});
    for (auto _ : state) benchmark::DoNotOptimize(jle3(s).err);
}
BENCHMARK(BM_Jle3)->Args({4, 30})->Args({10, 5})->Unit(benchmark::kMillisecond);

void BM_Wilson(benchmark::State& state) {
    const LaurentPolyMatrix s = random_spd({10, 10, 0, 1.0});
    AlgoParams p;
    p.kappa = 11;
    p.wilsonIters = 20;
    for (auto _ : state) benchmark::DoNotOptimize(wilson(s, p).err);
}
BENCHMARK(BM_Wilson)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
