// Serial reference vs OpenMP kernels. Run with --benchmark_time_unit=ms.

#include <benchmark/benchmark.h>

#include "frob/census.hpp"
#include "frob/field.hpp"
#include "frob/hurwitz.hpp"
#include "frob/moments.hpp"
#include "frob/qseries.hpp"

namespace {

void BM_BuildTableSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(frob::build_table_serial(state.range(0)));
  }
}
BENCHMARK(BM_BuildTableSerial)->Arg(100000)->Arg(400000);

void BM_BuildTableParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(frob::build_table(state.range(0)));
  }
}
BENCHMARK(BM_BuildTableParallel)->Arg(100000)->Arg(400000);

void BM_CensusTwistSerial(benchmark::State& state) {
  frob::PrimePowerField f = frob::field_build(state.range(0), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(frob::census_twist_serial(f));
  }
}
BENCHMARK(BM_CensusTwistSerial)->Arg(1009)->Arg(3001);

void BM_CensusTwistParallel(benchmark::State& state) {
  frob::PrimePowerField f = frob::field_build(state.range(0), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(frob::census_twist(f));
  }
}
BENCHMARK(BM_CensusTwistParallel)->Arg(1009)->Arg(3001);

void BM_SeriesMulSerial(benchmark::State& state) {
  int64_t n = state.range(0);
  frob::HurwitzTable table = frob::build_table(n);
  frob::QSeries h = frob::hurwitz_series(table, n);
  frob::QSeries theta = frob::theta_series(1, 1, 3, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(frob::QSeries::mul_serial(h, theta));
  }
}
BENCHMARK(BM_SeriesMulSerial)->Arg(2000)->Arg(8000);

void BM_SeriesMulParallel(benchmark::State& state) {
  int64_t n = state.range(0);
  frob::HurwitzTable table = frob::build_table(n);
  frob::QSeries h = frob::hurwitz_series(table, n);
  frob::QSeries theta = frob::theta_series(1, 1, 3, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(frob::QSeries::mul(h, theta));
  }
}
BENCHMARK(BM_SeriesMulParallel)->Arg(2000)->Arg(8000);

void BM_OddMomentSweep(benchmark::State& state) {
  frob::HurwitzTable table = frob::build_table(4 * state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(frob::residual_exponent(0, 1, 3, 100, state.range(0), 1, table,
                                                     frob::ResidualKind::kOddMoment));
  }
}
BENCHMARK(BM_OddMomentSweep)->Arg(20000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
