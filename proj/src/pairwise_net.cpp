#include "pairnet/pairwise_net.hpp"

#include <algorithm>
#include <string>

#include "pairnet/error.hpp"
#include "pairnet/seed.hpp"

namespace pairnet {

std::size_t PairwiseNetwork::pair_index(int r, int i, int j) {
  // Pairs before row i: sum_{a=1}^{i-1} (r - a).
  const auto row = static_cast<std::size_t>(i - 1);
  const auto rr = static_cast<std::size_t>(r);
  return row * rr - row * (row + 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

void PairwiseNetwork::validate() const {
  if (r < 2) fail(ErrorKind::Dimension, "pairwise network needs r >= 2");
  if (m < 1) fail(ErrorKind::Dimension, "pairwise network needs m >= 1");
  const auto pairs = enumerate_pairs(r);
  if (tests.size() != pairs.size()) {
    fail(ErrorKind::Dimension, "pairwise network for r=" + std::to_string(r) + " needs " +
                                   std::to_string(pairs.size()) + " tests, has " +
                                   std::to_string(tests.size()));
  }
  for (std::size_t t = 0; t < tests.size(); ++t) {
    if (tests[t].i != pairs[t].first || tests[t].j != pairs[t].second) {
      fail(ErrorKind::Dimension, "pairwise tests are not in lexicographic pair order");
    }
    if (tests[t].weights.w.size() != static_cast<std::size_t>(m) + 1) {
      fail(ErrorKind::Dimension, "pairwise test weight vector length must be m + 1");
    }
  }
}

std::vector<std::pair<int, int>> enumerate_pairs(int r) {
  if (r < 2) fail(ErrorKind::Parameter, "enumerate_pairs needs r >= 2");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(r) * (r - 1) / 2);
  for (int i = 1; i < r; ++i) {
    for (int j = i + 1; j <= r; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

std::vector<LabeledSample> pair_samples(const Dataset& ds, int i, int j) {
  std::vector<LabeledSample> out;
  for (const auto& ex : ds.examples()) {
    if (ex.class_id == i) {
      out.push_back({ex.features, 1});
    } else if (ex.class_id == j) {
      out.push_back({ex.features, -1});
    }
  }
  return out;
}

TrainConfig pair_config(const TrainConfig& cfg, int i, int j) {
  TrainConfig out = cfg;
  out.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
  return out;
}

PocketResult train_pair(const Dataset& ds, int i, int j, const TrainConfig& cfg) {
  const auto samples = pair_samples(ds, i, j);
  return train_pocket(samples, pair_config(cfg, i, j));
}

namespace {

void check_trainable(const Dataset& ds, const TrainConfig& cfg) {
  cfg.validate();
  if (ds.empty()) fail(ErrorKind::EmptyInput, "train_pairwise needs examples");
  const auto counts = ds.class_counts();
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) {
      fail(ErrorKind::Training, "class " + ds.class_labels()[k] + " has no training examples");
    }
  }
}

void check_input(const PairwiseNetwork& net, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(net.m)) {
    fail(ErrorKind::Dimension, "pairwise network expects " + std::to_string(net.m) +
                                   " features, got " + std::to_string(x.size()));
  }
}

double raw_activation(const TluWeights& w, std::span<const double> x) {
  double s = w.w[0];
  for (std::size_t i = 0; i < x.size(); ++i) s += w.w[i + 1] * x[i];
  return s;
}

}  // namespace

PairwiseTrainResult train_pairwise(const Dataset& ds, const TrainConfig& cfg) {
  check_trainable(ds, cfg);
  PairwiseTrainResult out;
  out.network.r = ds.r();
  out.network.m = ds.m();
  for (const auto& [i, j] : enumerate_pairs(ds.r())) {
    auto res = train_pair(ds, i, j, cfg);
    out.network.tests.push_back({i, j, res.weights});
    out.pair_results.push_back(std::move(res));
  }
  return out;
}

std::vector<int> net_outputs(const PairwiseNetwork& net, std::span<const double> x) {
  check_input(net, x);
  std::vector<int> g(static_cast<std::size_t>(net.r), 0);
  for (const auto& t : net.tests) {
    const int y = raw_activation(t.weights, x) > 0.0 ? 1 : -1;
    g[t.i - 1] += y;
    g[t.j - 1] -= y;
  }
  return g;
}

int net_classify(const PairwiseNetwork& net, std::span<const double> x) {
  check_input(net, x);
  const auto r = static_cast<std::size_t>(net.r);
  std::vector<int> g(r, 0);
  std::vector<double> margin(r, 0.0);
  for (const auto& t : net.tests) {
    const double a = raw_activation(t.weights, x);
    const int y = a > 0.0 ? 1 : -1;
    g[t.i - 1] += y;
    g[t.j - 1] -= y;
    margin[t.i - 1] += a;
    margin[t.j - 1] -= a;
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < r; ++k) {
    if (g[k] > g[best] || (g[k] == g[best] && margin[k] > margin[best])) best = k;
  }
  return static_cast<int>(best) + 1;
}

RecordClassification aggregate_record(std::span<const int> predictions, int r) {
  if (predictions.empty()) fail(ErrorKind::EmptyInput, "record has no segments");
  if (r < 1) fail(ErrorKind::Parameter, "class count must be positive");
  RecordClassification rc;
  rc.histogram.assign(static_cast<std::size_t>(r), 0);
  for (int p : predictions) {
    if (p < 1 || p > r) fail(ErrorKind::Dimension, "prediction outside [1, r]");
    ++rc.histogram[p - 1];
  }
  const double total = static_cast<double>(predictions.size());
  rc.distribution.reserve(rc.histogram.size());
  for (auto h : rc.histogram) rc.distribution.push_back(static_cast<double>(h) / total);
  const auto best = std::max_element(rc.histogram.begin(), rc.histogram.end());
  rc.modal_class = static_cast<int>(best - rc.histogram.begin()) + 1;
  rc.confidence = static_cast<double>(*best) / total;
  return rc;
}

RecordClassification classify_record(const PairwiseNetwork& net,
                                     std::span<const std::vector<double>> segments) {
  if (segments.empty()) fail(ErrorKind::EmptyInput, "record has no segments");
  std::vector<int> predictions;
  predictions.reserve(segments.size());
  for (const auto& seg : segments) predictions.push_back(net_classify(net, seg));
  return aggregate_record(predictions, net.r);
}

}  // namespace pairnet
