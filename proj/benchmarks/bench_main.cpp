#include <benchmark/benchmark.h>

#include "nonlocal/inference.hpp"
#include "nonlocal/nsbox.hpp"
#include "nonlocal/vandam.hpp"
#include "nonlocal/vandam_exact.hpp"

using namespace nonlocal;

static void BM_SampleBox(benchmark::State& state) {
  const auto box = make_isotropic_box(0.7);
  RandomStream rng(1);
  unsigned i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_box(box, BoxInput(i & 1, (i >> 1) & 1), rng));
    ++i;
  }
}
BENCHMARK(BM_SampleBox);

// One full protocol run at a single address: 2^n - 1 Alice queries, n for Bob.
static void BM_ProtocolRun(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const double c = state.range(1) != 0 ? 1.0 : 0.8;
  ProtocolRunner runner({n, c, 0.9}, BernoulliSource(0.0));
  RandomStream rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(runner.run_target(3, rng));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_ProtocolRun)->Args({4, 1})->Args({10, 1})->Args({10, 0})->Args({16, 1})->Args({20, 1});

static void BM_AllAddresses(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  ProtocolRunner runner({n, 0.8, 1.0}, BernoulliSource(0.2));
  RandomStream rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(runner.sweep(rng));
}
BENCHMARK(BM_AllAddresses)->Arg(3)->Arg(8);

static void BM_ExactEnumeration(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_exact({n, Rational(3, 5), Rational(9, 10)}));
}
BENCHMARK(BM_ExactEnumeration)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_FisherClosedForm(benchmark::State& state) {
  double theta = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(fisher_vandam(0.8, 0.95, theta, 30));
}
BENCHMARK(BM_FisherClosedForm);
BENCHMARK_MAIN();
