// Serial reference vs OpenMP kernels.  Thread count from THETALAB_THREADS.

#include <random>

#include <benchmark/benchmark.h>

#include "thetalab/constants.hpp"
#include "thetalab/parallel.hpp"
#include "thetalab/search.hpp"

using namespace thetalab;

namespace {

struct ThetaCase {
  PeriodMatrix tau;
  ComplexVector z;
  std::vector<Characteristic> chars;
};

ThetaCase theta_case(int g, int n) {
  std::mt19937_64 rng(1);
  PeriodMatrix tau = random_period_matrix(g, rng);
  ComplexVector z = random_point(tau, rng);
  return {tau, z, enumerate(g, n)};
}

void BM_theta_serial(benchmark::State& state) {
  const auto c = theta_case(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_values_serial(c.tau, c.z, c.chars));
}

void BM_theta_parallel(benchmark::State& state) {
  const auto c = theta_case(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_values(c.tau, c.z, c.chars));
}

void BM_h0_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(h0_exhaustive_serial(2));
}

void BM_h0_parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(h0_exhaustive(2));
}

}  // namespace

BENCHMARK(BM_theta_serial)->Args({2, 4})->Args({3, 2})->Args({3, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_theta_parallel)->Args({2, 4})->Args({3, 2})->Args({3, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_h0_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_h0_parallel)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
}
