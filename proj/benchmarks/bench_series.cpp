#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "thermopauli/series1.hpp"
#include "thermopauli/series2.hpp"
#include "thermopauli/subtropical.hpp"

using namespace thermopauli;

namespace {

TruncatedSeries1<std::complex<double>> random_series1(int degree, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-0.5, 0.5);
  TruncatedSeries1<std::complex<double>> f(degree, "x");
  f.at(0) = 1.0;
  for (int m = 1; m <= degree; ++m) f.at(m) = {coeff(rng), coeff(rng)};
  return f;
}

TruncatedSeries2<std::complex<double>> random_series2(int m0, int n0, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-0.5, 0.5);
  TruncatedSeries2<std::complex<double>> t(m0, n0);
  for (int m = 0; m <= m0; ++m)
    for (int n = 0; n <= n0; ++n) t.at(m, n) = {coeff(rng), coeff(rng)};
  return t;
}

void bm_series1_mul(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const auto a = random_series1(degree, 1);
  const auto b = random_series1(degree, 2);
  for (auto _ : state) benchmark::DoNotOptimize(series_mul(a, b));
}
BENCHMARK(bm_series1_mul)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void bm_series1_exp(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  auto a = random_series1(degree, 3);
  a.at(0) = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(series_exp(a));
}
BENCHMARK(bm_series1_exp)->Arg(8)->Arg(16)->Arg(32);

void bm_link_seq(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const auto f = random_series1(degree, 4);
  for (auto _ : state) benchmark::DoNotOptimize(legendre_link_seq(f, degree));
}
BENCHMARK(bm_link_seq)->Arg(4)->Arg(8)->Arg(12);

void bm_heat_apply(benchmark::State& state) {
  const int m0 = static_cast<int>(state.range(0));
  const auto t = random_series2(m0, 4 * m0, 5);
  for (auto _ : state) benchmark::DoNotOptimize(heat_apply(t));
}
BENCHMARK(bm_heat_apply)->Arg(2)->Arg(4)->Arg(8);

void bm_transport_correction(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  auto t = random_series2(order, 4 * order, 6);
  t.at(0, 0) = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(q_series(t, order));
}
BENCHMARK(bm_transport_correction)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
