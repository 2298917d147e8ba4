#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "thermopauli/fluctuations.hpp"
#include "thermopauli/subtropical.hpp"
#include "thermopauli/thermo.hpp"
#include "thermopauli/tropical.hpp"

#include "support/instances.hpp"

using namespace thermopauli;

namespace {

void bm_solve_tropical(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto inst = testing::random_tropical_instance<double>(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_tropical(inst.problem));
}
BENCHMARK(bm_solve_tropical)->Arg(4)->Arg(8)->Arg(12);

void bm_solve_subtropical(benchmark::State& state) {
  std::mt19937_64 rng(13);
  const int m0 = static_cast<int>(state.range(0));
  const auto inst = testing::random_subtropical_instance<double>(m0, 2 * m0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_subtropical(inst.problem));
}
BENCHMARK(bm_solve_subtropical)->Arg(2)->Arg(3)->Arg(4);

void bm_reduce_two_gases(benchmark::State& state) {
  std::vector<std::shared_ptr<const EntropyModel>> factors = {
      std::make_shared<SackurTetrodeModel>(1.0, 1.0, 1.0),
      std::make_shared<SackurTetrodeModel>(1.0, 1.5, 1.0)};
  const ProductModel model(factors);
  ReductionSpec spec;
  Eigen::MatrixXd c(6, 6);
  c << 1, 0, 0, 1, 0, 0,  //
      0, 0, 1, 0, 0, 0,   //
      0, 1, 0, 0, 0, 0,   //
      0, 0, 0, 0, 1, 0,   //
      0.5, 0, 0, -0.5, 0, 0,  //
      0, 0, 0, 0, 0, 1;
  spec.C = c;
  spec.released = {4, 5};
  Eigen::VectorXd e0(6);
  e0 << 2.0, 1.0, 1.0, 1.0, 1.5, 0.8;
  const ThermoPoint start = make_point(model, e0);
  for (auto _ : state) benchmark::DoNotOptimize(reduce(model, spec, start));
}
BENCHMARK(bm_reduce_two_gases);

void bm_deformed_moments(benchmark::State& state) {
  const CoherentPair pair{0.8, 2.0};
  DensityMatrix2 p;
  p.p << 0.6, 0.2, 0.2, 0.4;
  for (auto _ : state) benchmark::DoNotOptimize(deformed_moments(pair, p));
}
BENCHMARK(bm_deformed_moments);

}  // namespace

BENCHMARK_MAIN();
