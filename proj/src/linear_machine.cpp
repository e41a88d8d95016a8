#include "pairnet/linear_machine.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "pairnet/error.hpp"

namespace pairnet {

LinearMachine LinearMachine::zeros(int r, int m) {
  if (r < 2) fail(ErrorKind::Parameter, "linear machine needs r >= 2");
  if (m < 1) fail(ErrorKind::Parameter, "linear machine needs m >= 1");
  return {r, m, std::vector<TluWeights>(static_cast<std::size_t>(r), TluWeights::zeros(m))};
}

void LinearMachine::validate() const {
  if (r < 2 || m < 1 || weights.size() != static_cast<std::size_t>(r)) {
    fail(ErrorKind::Dimension, "linear machine must hold r >= 2 weight vectors");
  }
  for (const auto& w : weights) {
    if (w.w.size() != static_cast<std::size_t>(m) + 1) {
      fail(ErrorKind::Dimension, "linear machine weight vector length must be m + 1");
    }
  }
}

namespace {

void check_input(const LinearMachine& lm, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(lm.m)) {
    fail(ErrorKind::Dimension, "linear machine expects " + std::to_string(lm.m) +
                                   " features, got " + std::to_string(x.size()));
  }
}

double score(const std::vector<double>& w, const double* x, std::size_t m) {
  double s = w[0];
  for (std::size_t i = 0; i < m; ++i) s += w[i + 1] * x[i];
  return s;
}

int winner(const std::vector<TluWeights>& weights, const double* x, std::size_t m) {
  int best = 0;
  double best_score = score(weights[0].w, x, m);
  for (std::size_t j = 1; j < weights.size(); ++j) {
    const double s = score(weights[j].w, x, m);
    if (s > best_score) {
      best_score = s;
      best = static_cast<int>(j);
    }
  }
  return best + 1;
}

std::size_t count_correct(const std::vector<TluWeights>& weights, const Dataset& ds) {
  const auto m = static_cast<std::size_t>(ds.m());
  std::size_t correct = 0;
  for (const auto& ex : ds.examples()) {
    if (winner(weights, ex.features.data(), m) == ex.class_id) ++correct;
  }
  return correct;
}

}  // namespace

std::vector<double> lm_discriminants(const LinearMachine& lm, std::span<const double> x) {
  check_input(lm, x);
  std::vector<double> out;
  out.reserve(lm.weights.size());
  for (const auto& w : lm.weights) out.push_back(score(w.w, x.data(), x.size()));
  return out;
}

int argmax_class(std::span<const double> scores) {
  if (scores.empty()) fail(ErrorKind::EmptyInput, "argmax of an empty score vector");
  return static_cast<int>(std::max_element(scores.begin(), scores.end()) - scores.begin()) + 1;
}

int lm_classify(const LinearMachine& lm, std::span<const double> x) {
  check_input(lm, x);
  return winner(lm.weights, x.data(), x.size());
}

double lm_accuracy(const LinearMachine& lm, const Dataset& ds) {
  if (ds.empty()) fail(ErrorKind::EmptyInput, "no examples to score");
  if (ds.m() != lm.m) fail(ErrorKind::Dimension, "dataset/machine feature count mismatch");
  return static_cast<double>(count_correct(lm.weights, ds)) / static_cast<double>(ds.size());
}

LmTrainResult lm_train_pocket(const Dataset& ds, const TrainConfig& cfg) {
  cfg.validate();
  if (ds.empty()) fail(ErrorKind::EmptyInput, "lm_train_pocket needs examples");
  const auto counts = ds.class_counts();
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) {
      fail(ErrorKind::Training, "class " + ds.class_labels()[k] + " has no training examples");
    }
  }

  const auto m = static_cast<std::size_t>(ds.m());
  const std::size_t n = ds.size();
  const double total = static_cast<double>(n);

  LinearMachine current = LinearMachine::zeros(ds.r(), ds.m());
  LinearMachine pocket = current;
  std::size_t pocket_correct = count_correct(pocket.weights, ds);
  long pocket_run = 0;

  LmTrainResult result;
  result.accuracy_history.emplace_back(0, static_cast<double>(pocket_correct) / total);

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t cursor = n;

  long run = 0;
  bool current_scored = false;
  bool current_is_pocket = true;
  long it = 0;
  while (it < cfg.max_iterations && pocket_correct < n) {
    if (cursor == n) {
      if (cfg.shuffle) std::shuffle(order.begin(), order.end(), rng);
      cursor = 0;
    }
    const Example& ex = ds[order[cursor++]];
    ++it;

    const int k = winner(current.weights, ex.features.data(), m);
    if (k == ex.class_id) {
      ++run;
      if (current_is_pocket) {
        pocket_run = std::max(pocket_run, run);
      } else if (run > pocket_run && !current_scored) {
        current_scored = true;
        const std::size_t correct = count_correct(current.weights, ds);
        if (correct > pocket_correct) {
          pocket = current;
          pocket_correct = correct;
          pocket_run = run;
          current_is_pocket = true;
          result.accuracy_history.emplace_back(it, static_cast<double>(correct) / total);
        }
      }
    } else {
      auto& up = current.weights[ex.class_id - 1].w;
      auto& down = current.weights[k - 1].w;
      up[0] += cfg.c;
      down[0] -= cfg.c;
      for (std::size_t i = 0; i < m; ++i) {
        const double step = cfg.c * ex.features[i];
        up[i + 1] += step;
        down[i + 1] -= step;
      }
      run = 0;
      current_scored = false;
      current_is_pocket = false;
    }
  }

  result.machine = std::move(pocket);
  result.train_accuracy = static_cast<double>(pocket_correct) / total;
  result.iterations_used = it;
  return result;
}

}  // namespace pairnet
