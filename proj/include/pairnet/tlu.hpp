#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pairnet {

/// Extended weight vector of one linear test: w[0] multiplies the constant
/// input x0 = 1, w[1..m] the features.
struct TluWeights {
  std::vector<double> w;

  TluWeights() = default;
  explicit TluWeights(std::vector<double> values) : w(std::move(values)) {}
  static TluWeights zeros(int m) { return TluWeights(std::vector<double>(m + 1, 0.0)); }

  int m() const noexcept { return static_cast<int>(w.size()) - 1; }

  friend bool operator==(const TluWeights&, const TluWeights&) = default;
};

struct TrainConfig {
  double c = 1.0;                   // correction amount, > 0
  long max_iterations = 1'000'000;  // example visits, not epochs
  std::uint64_t seed = 0;
  bool shuffle = true;              // reshuffle visit order every pass

  void validate() const;
};

struct PocketResult {
  TluWeights weights;
  double train_accuracy = 0.0;
  long iterations_used = 0;
  /// (iteration, accuracy) at start and at every pocket swap.
  std::vector<std::pair<long, double>> accuracy_history;
};

/// A training sample that borrows its features from a dataset.
struct LabeledSample {
  std::span<const double> features;
  int target = 0;  // +1 or -1
};

/// w[0] + sum_i w[i] * x[i-1].
double activation(const TluWeights& w, std::span<const double> x);

/// +1 when the activation is strictly positive, -1 otherwise.
int tlu_output(const TluWeights& w, std::span<const double> x);

/// Returns w + c * target * (1, x).
TluWeights error_correct(const TluWeights& w, std::span<const double> x, int target, double c);

/// Fraction of samples whose thresholded output matches the target.
double tlu_accuracy(const TluWeights& w, std::span<const LabeledSample> samples);

/// Perceptron training with a pocket and ratchet.
///
/// The current weights start at zero. Samples are visited in a seeded random
/// order; each correct visit extends the current run, and once the run is
/// longer than the one that earned the pocket its weights, the current
/// weights are scored on the full set and swapped into the pocket only if
/// strictly more accurate. Each error applies `error_correct` and resets the
/// run. Training stops after `max_iterations` visits or once the pocket
/// classifies every sample correctly.
PocketResult train_pocket(std::span<const LabeledSample> samples, const TrainConfig& cfg);

}  // namespace pairnet
