#include <benchmark/benchmark.h>

#include <random>

#include "mixrobust/metrics.hpp"

using namespace mixrobust;

namespace {

Distribution sample_law(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> xs(n);
  for (double& x : xs) x = z(rng);
  return Distribution::empirical(xs);
}

void BM_KolmogorovOneVsGaussian(benchmark::State& st) {
  const auto emp = sample_law(st.range(0), 1);
  const auto ref = Distribution::gaussian(0, 1);
  const auto one = GaugeFunction::one();
  for (auto _ : st) benchmark::DoNotOptimize(kolmogorov_phi(emp, ref, one));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_KolmogorovOneVsGaussian)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_KolmogorovPowerVsGaussian(benchmark::State& st) {
  const auto emp = sample_law(st.range(0), 2);
  const auto ref = Distribution::gaussian(0, 1);
  const auto phi = GaugeFunction::power(2);
  for (auto _ : st) benchmark::DoNotOptimize(kolmogorov_phi(emp, ref, phi));
}
BENCHMARK(BM_KolmogorovPowerVsGaussian)->RangeMultiplier(4)->Range(64, 4096);

void BM_LevyEmpiricalPair(benchmark::State& st) {
  const auto a = sample_law(st.range(0), 3), b = sample_law(st.range(0), 4);
  for (auto _ : st) benchmark::DoNotOptimize(levy(a, b));
}
BENCHMARK(BM_LevyEmpiricalPair)->RangeMultiplier(4)->Range(64, 16384);

void BM_PsiLevySquare(benchmark::State& st) {
  const auto emp = sample_law(st.range(0), 5);
  const auto ref = Distribution::gaussian(0, 1);
  const auto psi = GaugeFunction::square();
  for (auto _ : st) benchmark::DoNotOptimize(psi_levy(emp, ref, psi));
}
BENCHMARK(BM_PsiLevySquare)->RangeMultiplier(4)->Range(64, 4096);

void BM_PsiVagueAbs(benchmark::State& st) {
  const auto emp = sample_law(st.range(0), 6);
  const auto ref = Distribution::gaussian(0, 1);
  const auto psi = GaugeFunction::abs_value();
  const auto family = DenseFamily::standard();
  for (auto _ : st) benchmark::DoNotOptimize(psi_vague(emp, ref, psi, family));
}
BENCHMARK(BM_PsiVagueAbs)->RangeMultiplier(4)->Range(64, 4096);

}  // namespace
