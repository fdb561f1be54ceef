#include <benchmark/benchmark.h>

#include <fracspec/cycles.hpp>
#include <fracspec/fourier.hpp>
#include <fracspec/pathspace.hpp>
#include <fracspec/transfer.hpp>

#include "systems.hpp"

using namespace fracspec;

static void BM_MuHatReal(benchmark::State& state) {
  const AffineSystem sys = test::twindragon();
  const FourierTransform ft(sys);
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ft(RealVec{t, 0.3}));
    t += 1e-3;
  }
}
BENCHMARK(BM_MuHatReal);

static void BM_MuHatExact(benchmark::State& state) {
  const AffineSystem sys = test::cantor4();
  const FourierTransform ft(sys);
  const RatVec t = test::r1(123457, 10);
  for (auto _ : state) benchmark::DoNotOptimize(ft(t));
}
BENCHMARK(BM_MuHatExact);

static void BM_EnumerateCycles(benchmark::State& state) {
  const AffineSystem sys = test::twindragon();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_cycles(sys, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_EnumerateCycles)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_RuelleApply(benchmark::State& state) {
  const AffineSystem sys = test::cantor4();
  const Weight W = Weight::from_digits(sys.B_real());
  const GridFunction f = make_grid(sys.l_view(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ruelle_apply(W, sys.l_view(), f));
}
BENCHMARK(BM_RuelleApply)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

static void BM_SamplePaths(benchmark::State& state) {
  const AffineSystem sys = test::twindragon();
  const Weight W = Weight::from_digits(sys.B_real());
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_paths(W, sys.l_view(), RealVec{0.3, 0.1}, 64, 10000, 1, 1));
  }
}
BENCHMARK(BM_SamplePaths)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
