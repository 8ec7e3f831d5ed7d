// Serial reference path against the OpenMP path for the parallel kernels.

#include <benchmark/benchmark.h>

#include "sigmatrop/amoeba.hpp"
#include "sigmatrop/hyperbolic.hpp"
#include "sigmatrop/sigma.hpp"
#include "sigmatrop/tropical.hpp"

using namespace sigmatrop;

namespace {

Exec mode(const benchmark::State& s) { return s.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_AmoebaSample(benchmark::State& state) {
  const LaurentPoly f = parse_laurent("x^2*y^3 + 3*x*y - 2*y^2 + x + 1", 2);
  const auto grid = default_s_grid();
  for (auto _ : state) benchmark::DoNotOptimize(amoeba_sample(f, grid, 128, mode(state)));
}

void BM_InfinityObstruction(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(h2::verify_infinity_obstruction_A(2, 2, 12, 5, mode(state)));
}

void BM_ZeroSearch(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(h2::verify_zero_obstruction_B(2, 4, 3, 3, 3, mode(state)));
}

void BM_TropicalHypersurface(benchmark::State& state) {
  const LaurentPoly f = parse_laurent("x^3 + y^3 + z^3 + x*y*z + x*y + y*z + x*z + x + y + z + 1", 3);
  for (auto _ : state) benchmark::DoNotOptimize(trop_hypersurface({f, Valuation::trivial()}, mode(state)));
}

void BM_CertificateSearch(benchmark::State& state) {
  const auto m = ModulePresentation::scalar({6});
  SearchBounds b;
  b.box = 6;
  b.coeff_bound = 1000000;
  for (auto _ : state) benchmark::DoNotOptimize(certificate_search(m, Character{1}, b, mode(state)));
}

}  // namespace

BENCHMARK(BM_AmoebaSample)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_InfinityObstruction)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ZeroSearch)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TropicalHypersurface)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CertificateSearch)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
