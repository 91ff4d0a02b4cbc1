#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "parafis/adaptation.hpp"
#include "parafis/analysis.hpp"
#include "parafis/prequential.hpp"
#include "parafis/rng.hpp"
#include "parafis/rule_system.hpp"
#include "parafis/structure.hpp"

namespace {

using namespace parafis;

Vector random_vector(SplitMix64& gen, int n, double lo, double hi) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = lo + (hi - lo) * gen.next_unit();
  return v;
}

void bm_membership(benchmark::State& state) {
  const int n = 16;
  SplitMix64 gen(7);
  Matrix cov = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) cov(i, i) = 0.5 + gen.next_unit();
  const Rule rule(random_vector(gen, n, 0, 1), cov, Matrix::Zero(4, n + 1),
                  100.0 * Matrix::Identity(n + 1, n + 1), 1);
  std::vector<Vector> probes;
  for (int i = 0; i < 64; ++i) probes.push_back(random_vector(gen, n, 0, 1));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rule.membership(probes[i]));
    i = (i + 1) % probes.size();
  }
}
BENCHMARK(bm_membership);

void bm_learn_step(benchmark::State& state) {
  const int n = 16, classes = 4;
  SplitMix64 gen(11);
  std::vector<Vector> points;
  std::vector<int> labels;
  for (int i = 0; i < 512; ++i) {
    const int label = static_cast<int>(gen.next_below(classes));
    Vector x = random_vector(gen, n, -0.05, 0.05);
    x(label % n) += 1.0;  // well-separated stationary clusters
    points.push_back(x);
    labels.push_back(label);
  }
  RuleSystem system(n, classes, HyperParams{});
  std::size_t i = 0;
  std::int64_t step = 0;
  for (auto _ : state) {
    system.learn(points[i], labels[i], step++);
    i = (i + 1) % points.size();
  }
}
BENCHMARK(bm_learn_step);

void bm_prequential(benchmark::State& state) {
  const int length = 1000;
  SplitMix64 gen(13);
  DriftStream stream;
  stream.class_count = 2;
  stream.feature_dim = 2;
  stream.a_len = length / 2;
  stream.b_len = length - length / 2;
  for (int i = 0; i < length; ++i) {
    const int label = static_cast<int>(gen.next_below(2));
    Vector x(2);
    const double shift = (label == 1 && i >= length / 2) ? 3.0 : 0.0;
    x << 3.0 * label + 0.1 * gen.next_unit(), shift + 0.1 * gen.next_unit();
    stream.entries.push_back(StreamEntry{x, label, i < length / 2 ? Phase::kA : Phase::kB});
  }
  const auto factory = [] { return RuleSystem(2, 2, HyperParams{}); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(prequential_run(factory, stream, TraceMode::kDetect));
  }
}
BENCHMARK(bm_prequential)->Unit(benchmark::kMillisecond);

void bm_fit_phase(benchmark::State& state) {
  std::vector<double> y(2000);
  SplitMix64 gen(17);
  for (int t = 0; t < 2000; ++t)
    y[static_cast<std::size_t>(t)] =
        0.6 + 0.3 * (1.0 - std::exp(-t / 150.0)) + 0.01 * (gen.next_unit() - 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_phase(y));
  }
}
BENCHMARK(bm_fit_phase)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
