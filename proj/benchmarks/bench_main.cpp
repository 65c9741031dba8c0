#include <benchmark/benchmark.h>

#include "gevrey/asymptotics.hpp"
#include "gevrey/borel.hpp"
#include "gevrey/riccati.hpp"
#include "gevrey/system.hpp"

namespace {

void BM_riccati_sn(benchmark::State& state) {
  int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gevrey::riccati_sn(0.5, 1.0, N));
}
BENCHMARK(BM_riccati_sn)->Arg(70)->Arg(300);

void BM_riccati_sn_negative_a(benchmark::State& state) {
  int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gevrey::riccati_sn(-3.2, 1.0, N));
}
BENCHMARK(BM_riccati_sn_negative_a)->Arg(70);

void BM_expand_rescaled(benchmark::State& state) {
  int N = static_cast<int>(state.range(0));
  auto ns = gevrey::normalize(gevrey::make_riccati(0.5, 1.0), N).first;
  for (auto _ : state) benchmark::DoNotOptimize(gevrey::expand_rescaled(ns, N));
}
BENCHMARK(BM_expand_rescaled)->Arg(300);

void BM_convolve_quad(benchmark::State& state) {
  auto Y = gevrey::DiscFunction::from_fn([](gevrey::cplx w) { return 1.0 / (1.0 + w); }, 2.0);
  auto Z = gevrey::DiscFunction::from_fn([](gevrey::cplx w) { return std::exp(w); }, 2.0);
  gevrey::cplx w{0.3, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(gevrey::convolve_quad(Y, Z, w, 64));
}
BENCHMARK(BM_convolve_quad);

}  // namespace

BENCHMARK_MAIN();
