#include <benchmark/benchmark.h>

#include "permrex/bounds.hpp"
#include "permrex/construct.hpp"
#include "permrex/length.hpp"
#include "permrex/regex.hpp"
#include "permrex/verify.hpp"

namespace {

using namespace permrex;

void BM_FTable(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    FTable table(n);
    benchmark::DoNotOptimize(table(n).get_mpz_t());
  }
}
BENCHMARK(BM_FTable)->RangeMultiplier(4)->Range(16, 4096);

void BM_BuildDivideAndConquer(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    Regex e = build_divide_and_conquer(AlphabetSet::first_n(n));
    benchmark::DoNotOptimize(e.identity());
  }
  state.counters["symbols"] = f(n).get_d();
}
BENCHMARK(BM_BuildDivideAndConquer)->DenseRange(4, 12, 2);

void BM_RenderSpaced(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Regex e = build_divide_and_conquer(AlphabetSet::first_n(n));
  for (auto _ : state) benchmark::DoNotOptimize(render(e, RenderFormat::Spaced).size());
}
BENCHMARK(BM_RenderSpaced)->DenseRange(6, 10, 2);

void BM_Glushkov(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Regex e = build_divide_and_conquer(AlphabetSet::first_n(n));
  for (auto _ : state) benchmark::DoNotOptimize(glushkov(e).position_count());
}
BENCHMARK(BM_Glushkov)->DenseRange(5, 9);

void BM_Verify(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto b = static_cast<Builder>(state.range(1));
  Regex e = build(b, AlphabetSet::first_n(n));
  VerifyLimits limits;
  limits.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(language_equals_permutations(e, n, limits).passed);
}
BENCHMARK(BM_Verify)->ArgsProduct({{5, 6, 7}, {0, 1, 2}});

void BM_GAlpha(benchmark::State& state) {
  const auto prec = static_cast<mpfr_prec_t>(state.range(0));
  const ErrReal alpha = alpha_low(prec);
  const ErrReal x = ErrReal::from_int(1000, prec);
  for (auto _ : state) benchmark::DoNotOptimize(g_alpha(x, alpha).to_double());
}
BENCHMARK(BM_GAlpha)->RangeMultiplier(2)->Range(128, 2048);

void BM_FnBounds(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_fn_bounds(n).size());
}
BENCHMARK(BM_FnBounds)->Arg(128)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
