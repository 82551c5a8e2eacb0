#include <benchmark/benchmark.h>

#include "vincstat/bounds.hpp"
#include "vincstat/enumeration.hpp"
#include "vincstat/moments.hpp"
#include "vincstat/montecarlo.hpp"
#include "vincstat/sampling.hpp"

using namespace vincstat;

namespace {

void BM_CountOccurrences(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = parse_pattern("2|1,3");
  const auto sigma = sample_uniform(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(count_occurrences(sigma, p));
  state.SetComplexityN(n);
}
BENCHMARK(BM_CountOccurrences)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_SampleUniform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_uniform(n, 7, stream++));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SampleUniform)->RangeMultiplier(8)->Range(8, 32768);

void BM_SampleByReduction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_by_reduction(n, 7, stream++));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SampleByReduction)->RangeMultiplier(8)->Range(8, 32768);

void BM_ExactVariance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = parse_pattern("1|3,2");
  for (auto _ : state) benchmark::DoNotOptimize(exact_variance_at(p, n));
}
BENCHMARK(BM_ExactVariance)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_VariancePolynomial(benchmark::State& state) {
  const auto p = parse_pattern("2|1|3");
  for (auto _ : state) benchmark::DoNotOptimize(variance_polynomial(p));
}
BENCHMARK(BM_VariancePolynomial)->Unit(benchmark::kMillisecond);

void BM_MaxDegree(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = parse_pattern("1|2|3");
  for (auto _ : state) benchmark::DoNotOptimize(max_degree_plus_one(n, p));
}
BENCHMARK(BM_MaxDegree)->RangeMultiplier(2)->Range(100, 800)->Unit(benchmark::kMillisecond);

void BM_Kolmogorov(benchmark::State& state) {
  CounterRng rng(3, 0);
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
  for (auto& x : xs) x = rng.standard_normal();
  for (auto _ : state) benchmark::DoNotOptimize(empirical_kolmogorov(xs));
}
BENCHMARK(BM_Kolmogorov)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
