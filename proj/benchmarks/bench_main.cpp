#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "sft/average.hpp"
#include "sft/index.hpp"
#include "sft/linalg.hpp"
#include "sft/spectral.hpp"
#include "sft/surface.hpp"

namespace {

void BM_GalerkinSpectrum(benchmark::State& state) {
  const sft::spectral::AsymptoticOperator op{
      sft::spectral::CoefficientLoop::from_constant(sft::linalg::J0(2)), static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(sft::spectral::spectrum(op));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GalerkinSpectrum)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_ConleyZehnder(benchmark::State& state) {
  const auto path = sft::spectral::rotation_path(2.5, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sft::spectral::cz_index(path));
}
BENCHMARK(BM_ConleyZehnder)->Arg(256)->Arg(1024);

void BM_GraphIsomorphism(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  sft::surface::DecoratedGraph a, b;
  for (std::size_t v = 0; v < n; ++v) {
    a.vertices.push_back({"v" + std::to_string(v), 0, 1});
    b.vertices.push_back({"w" + std::to_string(v), 0, 1});
  }
  for (std::size_t v = 0; v < n; ++v) {
    a.edges.emplace_back(v, (v + 1) % n);
    b.edges.emplace_back((v + 3) % n, (v + 4) % n);
  }
  for (auto _ : state) benchmark::DoNotOptimize(sft::surface::graphs_isomorphic(a, b));
}
BENCHMARK(BM_GraphIsomorphism)->Arg(4)->Arg(8)->Arg(12);

void BM_SignedZeroCount(benchmark::State& state) {
  const sft::average::BundleModel m;
  std::mt19937_64 rng(1);
  const sft::average::TauForm tau{2, {}};
  const auto s = tau.sample(rng);
  for (auto _ : state) benchmark::DoNotOptimize(sft::average::signed_zero_count(m, s, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SignedZeroCount)->Arg(20)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
