#include <benchmark/benchmark.h>

#include "dmcalc/conditional.hpp"
#include "dmcalc/random.hpp"
#include "dmcalc/verify.hpp"

using namespace dmcalc;

namespace {

void BM_Eigendecompose(benchmark::State& state) {
  Rng rng(1);
  const SymmetricMatrix s = random_symmetric(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(s));
}
BENCHMARK(BM_Eigendecompose)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_OdotFullRank(benchmark::State& state) {
  Rng rng(2);
  const int n = static_cast<int>(state.range(0));
  const PsdMatrix a = random_spd(rng, n), b = random_spd(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(odot(a, b));
}
BENCHMARK(BM_OdotFullRank)->Arg(4)->Arg(8)->Arg(16);

void BM_OdotRankDeficient(benchmark::State& state) {
  Rng rng(3);
  const int n = static_cast<int>(state.range(0));
  const PsdMatrix a = random_psd_rank(rng, n, n - 1);
  const PsdMatrix b = random_psd_rank(rng, n, n - 1);
  for (auto _ : state) benchmark::DoNotOptimize(odot(a, b));
}
BENCHMARK(BM_OdotRankDeficient)->Arg(4)->Arg(8);

void BM_OdotLimit(benchmark::State& state) {
  Rng rng(4);
  const PsdMatrix a = random_spd(rng, 3), b = random_spd(rng, 3);
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(odot_limit(a, b, n));
}
BENCHMARK(BM_OdotLimit)->Arg(64)->Arg(4096);

void BM_GeneralizedBayes(benchmark::State& state) {
  Rng rng(5);
  const int n = static_cast<int>(state.range(0));
  const BayesProblem p{random_density(rng, n), random_spd(rng, n)};
  for (auto _ : state) benchmark::DoNotOptimize(generalized_bayes(p));
}
BENCHMARK(BM_GeneralizedBayes)->Arg(4)->Arg(8)->Arg(16);

void BM_PartialTrace(benchmark::State& state) {
  Rng rng(6);
  const JointDensity j = random_joint(rng, 4, 4);
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace_b(j.matrix(), 4, 4));
}
BENCHMARK(BM_PartialTrace);

void BM_CondFull(benchmark::State& state) {
  Rng rng(7);
  const JointDensity j = random_joint(rng, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(cond_full(j));
}
BENCHMARK(BM_CondFull);

void BM_EmRecover(benchmark::State& state) {
  Rng rng(8);
  const JointDensity j = random_joint(rng, 2, 2);
  const ConditionalMatrix c = cond_full(j);
  for (auto _ : state) benchmark::DoNotOptimize(em_recover(c, 10000, 1e-9));
}
BENCHMARK(BM_EmRecover);

void BM_VerifySuiteOP(benchmark::State& state) {
  VerifyOptions opt;
  opt.trials = 10;
  for (auto _ : state) benchmark::DoNotOptimize(run_suite("OP", opt));
}
BENCHMARK(BM_VerifySuiteOP);

} // namespace

BENCHMARK_MAIN();
