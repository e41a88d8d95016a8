#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pairnet/dataset.hpp"
#include "pairnet/tlu.hpp"

namespace pairnet {

/// Baseline winner-take-all machine: one discriminant per class.
struct LinearMachine {
  int r = 0;
  int m = 0;
  std::vector<TluWeights> weights;  // weights[j - 1] scores class j

  static LinearMachine zeros(int r, int m);
  void validate() const;

  friend bool operator==(const LinearMachine&, const LinearMachine&) = default;
};

std::vector<double> lm_discriminants(const LinearMachine& lm, std::span<const double> x);

/// Argmax of a score vector as a 1-based class id; ties go to the lowest id.
int argmax_class(std::span<const double> scores);

int lm_classify(const LinearMachine& lm, std::span<const double> x);

double lm_accuracy(const LinearMachine& lm, const Dataset& ds);

struct LmTrainResult {
  LinearMachine machine;
  double train_accuracy = 0.0;
  long iterations_used = 0;
  std::vector<std::pair<long, double>> accuracy_history;
};

/// Online error-correction training of all r discriminants with a pocket
/// kept over whole-machine training accuracy. A misclassified example of
/// class j won by class k moves w(j) by +c*x and w(k) by -c*x.
LmTrainResult lm_train_pocket(const Dataset& ds, const TrainConfig& cfg);

}  // namespace pairnet
