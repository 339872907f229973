#include <benchmark/benchmark.h>

#include <vector>

#include "lipmin/laws.hpp"
#include "lipmin/minorant.hpp"
#include "lipmin/paths.hpp"
#include "lipmin/quadrature.hpp"
#include "lipmin/samplers.hpp"

namespace {

void BM_MinorantSweep(benchmark::State& state) {
  lipmin::RngStream rng(1, 0);
  const double horizon = static_cast<double>(state.range(0)) * 1e-3;
  const auto path = lipmin::simulate_brownian_two_sided({}, {0.0, horizon}, 1e-3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(lipmin::compute_minorant(path, 1.0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(path.size()));
}
BENCHMARK(BM_MinorantSweep)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);

void BM_SimulateBrownian(benchmark::State& state) {
  lipmin::RngStream rng(2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(lipmin::simulate_brownian_two_sided({}, {-50.0, 50.0}, 1e-3, rng));
  state.SetItemsProcessed(state.iterations() * 100001);
}
BENCHMARK(BM_SimulateBrownian);

void BM_DirectFeatures(benchmark::State& state) {
  const lipmin::LawParams p{1.0, 0.0};
  lipmin::RngStream rng(3, 0);
  lipmin::frak_T_table(p);
  for (auto _ : state) benchmark::DoNotOptimize(lipmin::sample_features_direct(p, rng));
}
BENCHMARK(BM_DirectFeatures);

void BM_GenericExcursionPath(benchmark::State& state) {
  const lipmin::LawParams p{1.0, 0.0};
  lipmin::RngStream rng(4, 0);
  for (auto _ : state) benchmark::DoNotOptimize(lipmin::sample_generic_excursion(p, 1e-3, rng));
}
BENCHMARK(BM_GenericExcursionPath);

void BM_FrakTPathwise(benchmark::State& state) {
  const lipmin::LawParams p{1.0, 0.0};
  lipmin::RngStream rng(5, 0);
  for (auto _ : state) benchmark::DoNotOptimize(lipmin::sample_frak_T_pathwise(p, 1e-3, rng));
}
BENCHMARK(BM_FrakTPathwise);

void BM_DDecomposition(benchmark::State& state) {
  const lipmin::LawParams p{1.0, 0.0};
  lipmin::RngStream rng(6, 0);
  const auto method = state.range(0) == 0 ? lipmin::ArgminMethod::Grid : lipmin::ArgminMethod::Exact;
  for (auto _ : state) benchmark::DoNotOptimize(lipmin::sample_D_decomposition(p, 1e-3, rng, method));
}
BENCHMARK(BM_DDecomposition)->Arg(0)->Arg(1);

void BM_FeatureCdfTable(benchmark::State& state) {
  const lipmin::LawParams p{1.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(lipmin::feature_cdf_table(lipmin::FeatureKind::Zeta, p));
}
BENCHMARK(BM_FeatureCdfTable)->Unit(benchmark::kMillisecond);

void BM_DensityIntegral(benchmark::State& state) {
  const lipmin::LawParams p{1.0, 0.5};
  for (auto _ : state)
    benchmark::DoNotOptimize(lipmin::quad::integrate_sqrt_singular(
        [&](double t) { return lipmin::density_frak_T(p, t); }, 0.0, 5.0, 1e-10));
}
BENCHMARK(BM_DensityIntegral);

}  // namespace

BENCHMARK_MAIN();
