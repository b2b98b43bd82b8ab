#include <benchmark/benchmark.h>

#include <random>

#include "mixrobust/prohorov.hpp"

using namespace mixrobust;

namespace {

FiniteLaw line_law(std::size_t n, double scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, scale);
  std::vector<double> xs(n);
  for (double& x : xs) x = z(rng);
  return FiniteLaw::empirical_on_line(xs);
}

void BM_ProhorovLineGreedy(benchmark::State& st) {
  const auto a = line_law(st.range(0), 1.0, 1), b = line_law(st.range(0), 1.1, 2);
  for (auto _ : st) benchmark::DoNotOptimize(prohorov_distance(a, b, FlowMethod::line_greedy));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_ProhorovLineGreedy)->RangeMultiplier(2)->Range(125, 2000)->Complexity();

void BM_ProhorovDinic(benchmark::State& st) {
  const auto a = line_law(st.range(0), 1.0, 3), b = line_law(st.range(0), 1.1, 4);
  for (auto _ : st) benchmark::DoNotOptimize(prohorov_distance(a, b, FlowMethod::dinic));
}
BENCHMARK(BM_ProhorovDinic)->RangeMultiplier(2)->Range(16, 256);

}  // namespace
