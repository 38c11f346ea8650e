#include "replete/adelic.hpp"
#include "replete/lattice.hpp"

#include <benchmark/benchmark.h>

using namespace replete;

namespace {

void BM_CountGaussianDisc(benchmark::State& state) {
  const NumberField qi = NumberField::gaussian();
  const RepleteIdeal a = make_replete(qi, unit_ideal(qi), {Rational(1, state.range(0))});
  EnumerationOptions opts;
  opts.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_h0(qi, a, opts));
}
BENCHMARK(BM_CountGaussianDisc)->Args({40, 1})->Args({160, 1})->Args({160, 4})->Unit(benchmark::kMillisecond);

void BM_CountRealQuadratic(benchmark::State& state) {
  const NumberField q2 = NumberField::quadratic(2);
  const Rational inv(1, state.range(0));
  const RepleteIdeal a = make_replete(q2, unit_ideal(q2), {inv, inv});
  for (auto _ : state) benchmark::DoNotOptimize(count_h0(q2, a));
}
BENCHMARK(BM_CountRealQuadratic)->Arg(12)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_CountCubic(benchmark::State& state) {
  FieldSpec spec;
  spec.poly = {-2, 0, 0, 1};
  const NumberField k = NumberField::from_spec(spec);
  const Rational inv(1, state.range(0));
  const RepleteIdeal a = make_replete(k, unit_ideal(k), {inv, inv});
  for (auto _ : state) benchmark::DoNotOptimize(count_h0(k, a));
}
BENCHMARK(BM_CountCubic)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_TateCheck(benchmark::State& state) {
  const NumberField qi = NumberField::gaussian();
  const SchwartzTestFunction f = gaussian_test_function(qi, principal_ideal(qi, qi.one() + qi.generator()), 1);
  const IdelePresentation y = trivial_idele(qi);
  for (auto _ : state) benchmark::DoNotOptimize(tate_check(qi, f, y, 10, 1e-8));
}
BENCHMARK(BM_TateCheck)->Unit(benchmark::kMillisecond);

void BM_SurfaceMonteCarlo(benchmark::State& state) {
  const NumberField qi = NumberField::gaussian();
  const ArchRegion e{{RegionFactor::disc(0, 0, 1)}};
  const ArchRegion d{{RegionFactor::box(0, 1, 0, 1)}};
  MonteCarloOptions mc;
  mc.samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(surface_area(qi, e, d, default_t_list(), mc));
}
BENCHMARK(BM_SurfaceMonteCarlo)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
