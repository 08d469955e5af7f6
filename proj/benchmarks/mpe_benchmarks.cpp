#include <benchmark/benchmark.h>

#include "mpe/noise_model.hpp"
#include "mpe/risk.hpp"
#include "mpe/shrinkage.hpp"
#include "mpe/signals.hpp"
#include "mpe/special_functions.hpp"
#include "mpe/transforms.hpp"

using namespace mpe;

namespace {

Signal noisy_harmonic(std::size_t n) {
  RngStream rng(1, 0);
  return add_noise(harmonic_gen(n), GaussianNoise(1.0), 5.0, rng).noisy;
}

void BM_DctRoundTrip(benchmark::State& state) {
  const Signal x = noisy_harmonic(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dct_inverse(dct_forward(x)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DctRoundTrip)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void BM_GridMinimizeMpe(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        grid_minimize([](double a) { return mpe_pointwise(2.5, a, 3.0, GaussianNoise(1.0)); }, r));
  }
}
BENCHMARK(BM_GridMinimizeMpe)->Arg(101)->Arg(1001)->Arg(10001);

void BM_GridMinimizeL1Convex(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid_minimize_convex([](double a) { return l1_gaussian(2.5, a, 1.0); }, r));
  }
}
BENCHMARK(BM_GridMinimizeL1Convex)->Arg(1001)->Arg(10001);

void BM_NoncentralChi2(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(noncentral_chi2_cdf(1.2 * k, k, 0.5 * k));
  }
}
BENCHMARK(BM_NoncentralChi2)->Arg(4)->Arg(16)->Arg(128)->Arg(1024);

void BM_StudentTCdf(benchmark::State& state) {
  double w = -8.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(student_t_cdf(w, 4.0));
    w = w > 8.0 ? -8.0 : w + 0.37;
  }
}
BENCHMARK(BM_StudentTCdf);

void BM_DenoisePointwiseMpe(benchmark::State& state) {
  const Signal x = noisy_harmonic(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(denoise_pointwise(x, Mpe{3.0}, GaussianNoise(1.0)));
}
BENCHMARK(BM_DenoisePointwiseMpe)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_DenoiseSubband(benchmark::State& state) {
  const Signal x = noisy_harmonic(4096);
  const Subband scheme{static_cast<std::size_t>(state.range(0)), std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(denoise_subband(x, scheme, GaussianNoise(1.0)));
}
BENCHMARK(BM_DenoiseSubband)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_IterateL1(benchmark::State& state) {
  const Signal x = noisy_harmonic(2048);
  for (auto _ : state) benchmark::DoNotOptimize(iterate_l1(x, GaussianNoise(1.0), 20));
}
BENCHMARK(BM_IterateL1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
