#pragma once

#include <span>
#include <vector>

#include "pairnet/dataset.hpp"
#include "pairnet/model.hpp"
#include "pairnet/pairwise_net.hpp"

namespace pairnet {

struct RecordRow {
  int record_id = 0;
  std::size_t n_segments = 0;
  std::size_t n_correct = 0;
  int modal_class = 0;
  int true_class = 0;
  double confidence = 0.0;
  std::vector<double> distribution;
};

struct Metrics {
  double segment_accuracy = 0.0;
  double record_accuracy = 0.0;
  std::vector<RecordRow> records;  // ascending record id
  /// confusion[true - 1][predicted - 1]
  std::vector<std::vector<std::size_t>> confusion;

  std::size_t misclassified_records() const;
};

/// Scores precomputed per-example predictions against the dataset labels.
Metrics evaluate_predictions(const Dataset& ds, std::span<const int> predictions);

/// Serial reference path. `parallel.hpp` has the OpenMP variant.
std::vector<int> predict(const Model& model, const Dataset& ds);

Metrics evaluate(const Model& model, const Dataset& ds);

}  // namespace pairnet
