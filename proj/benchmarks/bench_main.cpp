#include <benchmark/benchmark.h>

#include <random>

#include "rriqa/bkf.hpp"
#include "rriqa/metrics.hpp"
#include "rriqa/rr_features.hpp"
#include "rriqa/special.hpp"
#include "rriqa/tetrolet.hpp"

namespace {

using namespace rriqa;

Plane noise_plane(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  Plane p(n, n);
  for (auto& v : p.values()) v = u(rng);
  return p;
}

void BM_AnalyzeBlock(benchmark::State& state) {
  const auto& cat = tiling_catalog();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  Block4x4 b;
  for (auto& v : b) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(analyze_block(b, cat));
}
BENCHMARK(BM_AnalyzeBlock);

void BM_Forward(benchmark::State& state) {
  const auto img = noise_plane(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(forward(img, 3));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Forward)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Inverse(benchmark::State& state) {
  const auto dec = forward(noise_plane(512, 3), 3);
  for (auto _ : state) benchmark::DoNotOptimize(inverse_plane(dec));
}
BENCHMARK(BM_Inverse)->Unit(benchmark::kMillisecond);

void BM_Extract(benchmark::State& state) {
  const GrayImage img(noise_plane(512, 4));
  for (auto _ : state) benchmark::DoNotOptimize(extract(img));
}
BENCHMARK(BM_Extract)->Unit(benchmark::kMillisecond);

void BM_Pdf(benchmark::State& state) {
  const BkfParams p{0.7, 3.0};
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdf(x, p));
    x = x < 20.0 ? x * 1.01 : 0.1;
  }
}
BENCHMARK(BM_Pdf);

void BM_BesselK(benchmark::State& state) {
  double x = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_k(2.3, x));
    x = x < 30.0 ? x * 1.01 : 0.05;
  }
}
BENCHMARK(BM_BesselK);

void BM_L2Closed(benchmark::State& state) {
  const BkfParams a{0.4, 12.0}, b{0.9, 30.0};
  for (auto _ : state) benchmark::DoNotOptimize(l2_distance_closed(a, b));
}
BENCHMARK(BM_L2Closed);

void BM_L2Quadrature(benchmark::State& state) {
  const BkfParams a{0.4, 12.0}, b{0.9, 30.0};
  for (auto _ : state) benchmark::DoNotOptimize(l2_distance_quadrature(a, b));
}
BENCHMARK(BM_L2Quadrature)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
