#include <benchmark/benchmark.h>

#include <cmath>

#include "pckhdmr/bench.hpp"
#include "pckhdmr/hdmr.hpp"
#include "pckhdmr/kriging.hpp"
#include "pckhdmr/random.hpp"
#include "pckhdmr/sampling.hpp"

namespace {

using namespace pckhdmr;

SampleSet sine_data(int n) {
  DesignSpace space(Vector::Constant(1, 0.0), Vector::Constant(1, 1.0));
  SampleSet data(1);
  for (int k = 0; k < n; ++k) {
    Vector x(1);
    x << static_cast<double>(k) / (n - 1);
    data.add(x, std::sin(7.0 * x(0)) + 0.3 * x(0));
  }
  return data;
}

void BM_KrigingFit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DesignSpace space(Vector::Constant(1, 0.0), Vector::Constant(1, 1.0));
  const SampleSet data = sine_data(n);
  for (auto _ : state) {
    KrigingModel m = fit_kriging(data, space);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_KrigingFit)->Arg(10)->Arg(20)->Arg(40);

void BM_KrigingPredict(benchmark::State& state) {
  const DesignSpace space(Vector::Constant(1, 0.0), Vector::Constant(1, 1.0));
  const KrigingModel m = fit_kriging(sine_data(20), space);
  Vector x(1);
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-4;
    if (t > 1.0) t = 0.0;
    x(0) = t;
    benchmark::DoNotOptimize(m.predict_mean(x));
  }
}
BENCHMARK(BM_KrigingPredict);

void BM_MaxEntropySelect(benchmark::State& state) {
  RandomStream rng(7);
  SampleSet existing(2);
  for (int k = 0; k < 20; ++k) {
    Vector x(2);
    x << rng.uniform01(), rng.uniform01();
    if (!existing.contains(x)) existing.add(x, 0.0);
  }
  std::vector<Vector> candidates;
  for (int k = 0; k < 100; ++k) {
    Vector x(2);
    x << rng.uniform01(), rng.uniform01();
    candidates.push_back(x);
  }
  const Vector theta = Vector::Constant(2, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_entropy_select(existing, candidates, theta, 1.0));
  }
}
BENCHMARK(BM_MaxEntropySelect);

const HdmrModel& fitted_decomposition() {
  static const HdmrModel model = [] {
    const BenchmarkFunction fn = table3_function(1);
    BudgetedFunction f(fn.arity, fn.evaluator, std::nullopt);
    return build_hdmr(f, fn.space);
  }();
  return model;
}

void BM_HdmrPredict(benchmark::State& state) {
  const HdmrModel& model = fitted_decomposition();
  RandomStream rng(11);
  Vector x(2);
  for (auto _ : state) {
    x << rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0);
    benchmark::DoNotOptimize(model.predict(x));
  }
}
BENCHMARK(BM_HdmrPredict);

void BM_HdmrBuild(benchmark::State& state) {
  const BenchmarkFunction fn = table3_function(1);
  for (auto _ : state) {
    BudgetedFunction f(fn.arity, fn.evaluator, std::nullopt);
    HdmrModel m = build_hdmr(f, fn.space);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_HdmrBuild);

}  // namespace

BENCHMARK_MAIN();
