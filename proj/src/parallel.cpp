#include "pairnet/parallel.hpp"

#include <exception>
#include <string>

#include <omp.h>

#include "pairnet/error.hpp"
#include "pairnet/evaluate.hpp"

namespace pairnet::par {

namespace {

/// Runs body(k) for k in [0, count) across workers and rethrows the first
/// exception (lowest index) on the calling thread.
template <class Body>
void parallel_for(std::size_t count, int jobs, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_jobs(jobs))
  for (long k = 0; k < n; ++k) {
    try {
      body(static_cast<std::size_t>(k));
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

int resolve_jobs(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

PairwiseTrainResult train_pairwise(const Dataset& ds, const TrainConfig& cfg, int jobs) {
  cfg.validate();
  if (ds.empty()) fail(ErrorKind::EmptyInput, "train_pairwise needs examples");
  const auto counts = ds.class_counts();
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) {
      fail(ErrorKind::Training, "class " + ds.class_labels()[k] + " has no training examples");
    }
  }

  const auto pairs = enumerate_pairs(ds.r());
  std::vector<PocketResult> results(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t t) {
    results[t] = train_pair(ds, pairs[t].first, pairs[t].second, cfg);
  });

  PairwiseTrainResult out;
  out.network.r = ds.r();
  out.network.m = ds.m();
  out.network.tests.reserve(pairs.size());
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    out.network.tests.push_back({pairs[t].first, pairs[t].second, results[t].weights});
  }
  out.pair_results = std::move(results);
  return out;
}

std::vector<int> predict(const Model& model, const Dataset& ds, int jobs) {
  if (ds.m() != model.m()) {
    fail(ErrorKind::Dimension, "model expects " + std::to_string(model.m()) +
                                   " features, dataset has " + std::to_string(ds.m()));
  }
  std::vector<int> out(ds.size(), 0);
  const auto n = static_cast<long>(ds.size());
#pragma omp parallel for schedule(static) num_threads(resolve_jobs(jobs))
  for (long k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = model.classify(ds[static_cast<std::size_t>(k)].features);
  }
  return out;
}

std::vector<std::vector<double>> extract_features(std::span<const SegmentSignal> segments,
                                                  const FeatureConfig& cfg, int jobs) {
  std::vector<std::vector<double>> out(segments.size());
  parallel_for(segments.size(), jobs,
               [&](std::size_t k) { out[k] = pairnet::extract_features(segments[k], cfg); });
  return out;
}

}  // namespace pairnet::par
