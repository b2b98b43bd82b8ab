#include <benchmark/benchmark.h>

#include "mixrobust/lab.hpp"
#include "mixrobust/processes.hpp"

using namespace mixrobust;

namespace {

void BM_SimulateArma11(benchmark::State& st) {
  const auto spec = LinearProcessSpec::make(CoefficientGenerator::arma({{0.5}, {0.3}}), Distribution::gaussian(0, 1));
  std::uint64_t seed = 0;
  for (auto _ : st) benchmark::DoNotOptimize(simulate_linear(spec, st.range(0), ++seed));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_SimulateArma11)->RangeMultiplier(4)->Range(64, 16384);

void BM_SimulateSlowAr(benchmark::State& st) {
  const auto spec = LinearProcessSpec::make(CoefficientGenerator::arma({{0.95}, {}}), Distribution::gaussian(0, 1));
  std::uint64_t seed = 0;
  for (auto _ : st) benchmark::DoNotOptimize(simulate_linear(spec, st.range(0), ++seed));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_SimulateSlowAr)->Arg(4096);

void BM_MixingProfile(benchmark::State& st) {
  const auto spec = LinearProcessSpec::make(CoefficientGenerator::arma({{0.5, -0.2}, {0.3}}), Distribution::gaussian(0, 1));
  for (auto _ : st) {
    const MixingProfile alpha(spec);
    double s = 0.0;
    for (std::size_t n = 0; n < 64; ++n) s += alpha(n);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_MixingProfile);

void BM_UgcSmallRun(benchmark::State& st) {
  const auto cfg = lab::parse_config(R"({"experiment":"ugc","class":{"kind":"arma-class","c":0.5,"size":4},
    "n_grid":[64,256],"replicates":50,"master_seed":1})");
  for (auto _ : st) benchmark::DoNotOptimize(lab::run_ugc(cfg));
}
BENCHMARK(BM_UgcSmallRun)->Unit(benchmark::kMillisecond);

}  // namespace
