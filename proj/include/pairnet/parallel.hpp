#pragma once

// OpenMP counterparts of the serial reference kernels. Each produces results
// identical to its serial twin for any worker count: work items own their
// outputs exclusively and are gathered by index.

#include <span>
#include <vector>

#include "pairnet/dataset.hpp"
#include "pairnet/eeg_features.hpp"
#include "pairnet/model.hpp"
#include "pairnet/pairwise_net.hpp"

namespace pairnet::par {

/// Worker count actually used for `jobs` (<= 0 means the OpenMP default).
int resolve_jobs(int jobs);

/// Twin of pairnet::train_pairwise.
PairwiseTrainResult train_pairwise(const Dataset& ds, const TrainConfig& cfg, int jobs = 0);

/// Twin of pairnet::predict.
std::vector<int> predict(const Model& model, const Dataset& ds, int jobs = 0);

/// Twin of calling pairnet::extract_features on each segment in turn.
std::vector<std::vector<double>> extract_features(std::span<const SegmentSignal> segments,
                                                  const FeatureConfig& cfg = {}, int jobs = 0);

}  // namespace pairnet::par
