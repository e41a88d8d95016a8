// Serial reference kernels vs their OpenMP twins.
#include <random>

#include <benchmark/benchmark.h>

#include "pairnet/evaluate.hpp"
#include "pairnet/parallel.hpp"
#include "pairnet/synthgen.hpp"

using namespace pairnet;

namespace {

const Dataset& bench_data() {
  static const Dataset ds = standardize(generate(SynthConfig{}.scaled(0.1))).dataset;
  return ds;
}

TrainConfig bench_config() {
  TrainConfig cfg;
  cfg.max_iterations = 20'000;
  cfg.seed = 1;
  return cfg;
}

const Model& bench_model() {
  static const Model model{train_pairwise(bench_data(), bench_config()).network, std::nullopt};
  return model;
}

const std::vector<SegmentSignal>& bench_segments() {
  static const auto segs = [] {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    std::vector<SegmentSignal> out(64);
    for (auto& s : out) {
      s.fs = 256;
      s.c3.resize(2560);
      s.c4.resize(2560);
      for (auto& v : s.c3) v = normal(rng);
      for (auto& v : s.c4) v = normal(rng);
    }
    return out;
  }();
  return segs;
}

void BM_TrainPairwiseSerial(benchmark::State& state) {
  const auto& ds = bench_data();
  for (auto _ : state) benchmark::DoNotOptimize(train_pairwise(ds, bench_config()));
}

void BM_TrainPairwiseParallel(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  const auto& ds = bench_data();
  for (auto _ : state) benchmark::DoNotOptimize(par::train_pairwise(ds, bench_config(), jobs));
}

void BM_PredictSerial(benchmark::State& state) {
  const auto& model = bench_model();
  for (auto _ : state) benchmark::DoNotOptimize(predict(model, bench_data()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(bench_data().size()));
}

void BM_PredictParallel(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  const auto& model = bench_model();
  for (auto _ : state) benchmark::DoNotOptimize(par::predict(model, bench_data(), jobs));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(bench_data().size()));
}

void BM_ExtractSerial(benchmark::State& state) {
  const auto& segs = bench_segments();
  for (auto _ : state) {
    for (const auto& s : segs) benchmark::DoNotOptimize(extract_features(s));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(bench_segments().size()));
}

void BM_ExtractParallel(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  const auto& segs = bench_segments();
  for (auto _ : state) benchmark::DoNotOptimize(par::extract_features(segs, {}, jobs));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(bench_segments().size()));
}

}  // namespace

BENCHMARK(BM_TrainPairwiseSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TrainPairwiseParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PredictSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PredictParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExtractSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExtractParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
