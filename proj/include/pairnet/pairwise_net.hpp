#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pairnet/dataset.hpp"
#include "pairnet/tlu.hpp"

namespace pairnet {

/// Hidden neuron f_{i/j}: +1 on class i, -1 on class j.
struct PairwiseTest {
  int i = 0;
  int j = 0;
  TluWeights weights;

  friend bool operator==(const PairwiseTest&, const PairwiseTest&) = default;
};

/// r(r-1)/2 pairwise tests in lexicographic (i, j) order. Output neuron g_i
/// is wired to f_{i/k} with +1 and to f_{k/i} with -1; the wiring is implied
/// by the pair indices and is not stored.
struct PairwiseNetwork {
  int r = 0;
  int m = 0;
  std::vector<PairwiseTest> tests;

  void validate() const;
  /// Position of pair (i, j), i < j, in `tests`.
  static std::size_t pair_index(int r, int i, int j);
  const PairwiseTest& test(int i, int j) const { return tests[pair_index(r, i, j)]; }

  friend bool operator==(const PairwiseNetwork&, const PairwiseNetwork&) = default;
};

std::vector<std::pair<int, int>> enumerate_pairs(int r);

/// Samples of classes i (+1) and j (-1) only, in dataset order.
std::vector<LabeledSample> pair_samples(const Dataset& ds, int i, int j);

/// Config for pair (i, j): the global config with a seed derived from
/// (cfg.seed, i, j).
TrainConfig pair_config(const TrainConfig& cfg, int i, int j);

PocketResult train_pair(const Dataset& ds, int i, int j, const TrainConfig& cfg);

struct PairwiseTrainResult {
  PairwiseNetwork network;
  std::vector<PocketResult> pair_results;  // same order as network.tests
};

/// Serial reference: trains every pair in lexicographic order.
PairwiseTrainResult train_pairwise(const Dataset& ds, const TrainConfig& cfg);

/// Output neuron sums g_1..g_r over the thresholded test outputs.
std::vector<int> net_outputs(const PairwiseNetwork& net, std::span<const double> x);

/// Winner-take-all over net_outputs. Ties are broken by the signed sum of
/// raw test activations involving each tied class, then by lowest class id.
int net_classify(const PairwiseNetwork& net, std::span<const double> x);

struct RecordClassification {
  std::vector<std::size_t> histogram;
  std::vector<double> distribution;
  int modal_class = 0;
  double confidence = 0.0;
};

/// Histogram of per-segment decisions; modal class breaks ties toward the
/// lowest id.
RecordClassification aggregate_record(std::span<const int> predictions, int r);

RecordClassification classify_record(const PairwiseNetwork& net,
                                     std::span<const std::vector<double>> segments);

}  // namespace pairnet
