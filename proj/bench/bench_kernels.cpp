// SPDX-License-Identifier: Apache-2.0
// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "powersum/generators.hpp"
#include "powersum/kernels.hpp"
#include "powersum/polymoment.hpp"

using namespace powersum;

namespace {

std::vector<Complex> points(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> z(n);
  for (auto& v : z) v = {u(rng), u(rng)};
  return z;
}

void BM_PowerSumsSerial(benchmark::State& state) {
  const auto z = points(static_cast<std::size_t>(state.range(0)));
  std::vector<Complex> out(512);
  for (auto _ : state) {
    kernels::serial::power_sums(z, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_PowerSumsOmp(benchmark::State& state) {
  const auto z = points(static_cast<std::size_t>(state.range(0)));
  std::vector<Complex> out(512);
  for (auto _ : state) {
    kernels::omp::power_sums(z, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_ExtendedPowerSumsSerial(benchmark::State& state) {
  const auto z = points(64);
  std::vector<ExtComplex> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) kernels::serial::power_sums(z, 60, out);
}

void BM_ExtendedPowerSumsOmp(benchmark::State& state) {
  const auto z = points(64);
  std::vector<ExtComplex> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) kernels::omp::power_sums(z, 60, out);
}

void BM_ConvolveSerial(benchmark::State& state) {
  const auto a = points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::convolve<Complex>(a, a));
}

void BM_ConvolveOmp(benchmark::State& state) {
  const auto a = points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::convolve<Complex>(a, a));
}

void BM_PolyMomentReference(benchmark::State& state) {
  const auto f = random_polynomial(3, 5);
  for (auto _ : state) benchmark::DoNotOptimize(poly_moment_reference(f, static_cast<unsigned>(state.range(0))));
}

void BM_PolyMoment(benchmark::State& state) {
  const auto f = random_polynomial(3, 5);
  for (auto _ : state) benchmark::DoNotOptimize(poly_moment(f, static_cast<unsigned>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_PowerSumsSerial)->Arg(64)->Arg(4096);
BENCHMARK(BM_PowerSumsOmp)->Arg(64)->Arg(4096);
BENCHMARK(BM_ExtendedPowerSumsSerial)->Arg(256);
BENCHMARK(BM_ExtendedPowerSumsOmp)->Arg(256);
BENCHMARK(BM_ConvolveSerial)->Arg(256)->Arg(2048);
BENCHMARK(BM_ConvolveOmp)->Arg(256)->Arg(2048);
BENCHMARK(BM_PolyMomentReference)->Arg(64)->Arg(128);
BENCHMARK(BM_PolyMoment)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
