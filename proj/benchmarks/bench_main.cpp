#include <benchmark/benchmark.h>

#include "v1sign/asymptotics.hpp"
#include "v1sign/constants.hpp"
#include "v1sign/series.hpp"
#include "v1sign/verifier.hpp"

namespace {

using namespace v1sign;

void BM_Coefficients(benchmark::State& state) {
  const auto max_n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(v1_coefficients(max_n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Coefficients)->Arg(705)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_CoefficientsThreaded(benchmark::State& state) {
  CoefficientOptions opts;
  opts.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(v1_coefficients(20000, opts));
}
BENCHMARK(BM_CoefficientsThreaded)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SeriesInverse(benchmark::State& state) {
  const auto order = static_cast<std::size_t>(state.range(0));
  const auto p = pochhammer_neg_q2(30, order);
  for (auto _ : state) benchmark::DoNotOptimize(series_inverse(p));
}
BENCHMARK(BM_SeriesInverse)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_DilogG(benchmark::State& state) {
  PrecisionBudget budget;
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(state.range(0)));
  budget.target_width = mpq_class(mpz_class(1), den);
  for (auto _ : state) benchmark::DoNotOptimize(dilog_G(budget));
}
BENCHMARK(BM_DilogG)->Arg(8)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_ComputeConstants(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compute_constants());
}
BENCHMARK(BM_ComputeConstants)->Unit(benchmark::kMillisecond);

void BM_MainTerm(benchmark::State& state) {
  const AsymptoticContext ctx;
  (void)ctx.constants(0);
  std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(main_term(n++, ctx));
}
BENCHMARK(BM_MainTerm)->Arg(2000)->Arg(20000)->Unit(benchmark::kMicrosecond);

void BM_Candidates(benchmark::State& state) {
  const AsymptoticContext ctx;
  (void)ctx.constants(0);
  for (auto _ : state) benchmark::DoNotOptimize(candidates_up_to(Family::minus, state.range(0), ctx));
}
BENCHMARK(BM_Candidates)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_ScanRange(benchmark::State& state) {
  const AsymptoticContext ctx;
  const auto coeffs = v1_coefficients(static_cast<std::size_t>(state.range(0)));
  ScanOptions opts;
  opts.with_accuracy = false;
  for (auto _ : state) benchmark::DoNotOptimize(scan_range(coeffs, 292, state.range(0), ctx, opts));
}
BENCHMARK(BM_ScanRange)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
