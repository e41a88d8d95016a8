#include "pairnet/tlu.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "pairnet/error.hpp"

namespace pairnet {

void TrainConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::Parameter, "correction c must be > 0");
  if (max_iterations <= 0) fail(ErrorKind::Parameter, "max_iterations must be > 0");
}

namespace {

void check_dims(const TluWeights& w, std::span<const double> x) {
  if (w.w.empty() || x.size() + 1 != w.w.size()) {
    fail(ErrorKind::Dimension, "weights of length " + std::to_string(w.w.size()) +
                                   " cannot score " + std::to_string(x.size()) + " features");
  }
}

inline double dot_extended(const double* w, const double* x, std::size_t m) {
  double sum = w[0];
  for (std::size_t i = 0; i < m; ++i) sum += w[i + 1] * x[i];
  return sum;
}

inline int sign_output(double a) { return a > 0.0 ? 1 : -1; }

std::size_t count_correct(const std::vector<double>& w, std::span<const LabeledSample> samples) {
  std::size_t correct = 0;
  for (const auto& s : samples) {
    if (sign_output(dot_extended(w.data(), s.features.data(), s.features.size())) == s.target) {
      ++correct;
    }
  }
  return correct;
}

}  // namespace

double activation(const TluWeights& w, std::span<const double> x) {
  check_dims(w, x);
  return dot_extended(w.w.data(), x.data(), x.size());
}

int tlu_output(const TluWeights& w, std::span<const double> x) {
  return sign_output(activation(w, x));
}

TluWeights error_correct(const TluWeights& w, std::span<const double> x, int target, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::Parameter, "correction c must be > 0");
  if (target != 1 && target != -1) fail(ErrorKind::Parameter, "target must be +1 or -1");
  check_dims(w, x);
  TluWeights out = w;
  const double step = c * static_cast<double>(target);
  out.w[0] += step;
  for (std::size_t i = 0; i < x.size(); ++i) out.w[i + 1] += step * x[i];
  return out;
}

double tlu_accuracy(const TluWeights& w, std::span<const LabeledSample> samples) {
  if (samples.empty()) fail(ErrorKind::EmptyInput, "no samples to score");
  for (const auto& s : samples) check_dims(w, s.features);
  return static_cast<double>(count_correct(w.w, samples)) / static_cast<double>(samples.size());
}

PocketResult train_pocket(std::span<const LabeledSample> samples, const TrainConfig& cfg) {
  cfg.validate();
  if (samples.empty()) fail(ErrorKind::EmptyInput, "train_pocket needs at least one sample");

  const std::size_t m = samples.front().features.size();
  bool has_pos = false;
  bool has_neg = false;
  for (const auto& s : samples) {
    if (s.features.size() != m) fail(ErrorKind::Dimension, "samples disagree on feature count");
    if (s.target == 1) {
      has_pos = true;
    } else if (s.target == -1) {
      has_neg = true;
    } else {
      fail(ErrorKind::Parameter, "target must be +1 or -1");
    }
  }
  if (!has_pos || !has_neg) {
    fail(ErrorKind::Training, "train_pocket needs samples of both target signs");
  }

  const std::size_t n = samples.size();
  const double total = static_cast<double>(n);
  std::vector<double> current(m + 1, 0.0);
  std::vector<double> pocket = current;
  std::size_t pocket_correct = count_correct(pocket, samples);
  long pocket_run = 0;

  PocketResult result;
  result.accuracy_history.emplace_back(0, static_cast<double>(pocket_correct) / total);

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t cursor = n;

  long run = 0;
  // Once the current weights have been scored they need no rescoring until
  // the next correction changes them.
  bool current_scored = false;
  bool current_is_pocket = true;

  long it = 0;
  while (it < cfg.max_iterations && pocket_correct < n) {
    if (cursor == n) {
      if (cfg.shuffle) std::shuffle(order.begin(), order.end(), rng);
      cursor = 0;
    }
    const LabeledSample& s = samples[order[cursor++]];
    ++it;

    const double a = dot_extended(current.data(), s.features.data(), m);
    if (sign_output(a) == s.target) {
      ++run;
      if (current_is_pocket) {
        pocket_run = std::max(pocket_run, run);
      } else if (run > pocket_run && !current_scored) {
        current_scored = true;
        const std::size_t correct = count_correct(current, samples);
        if (correct > pocket_correct) {
          pocket = current;
          pocket_correct = correct;
          pocket_run = run;
          current_is_pocket = true;
          result.accuracy_history.emplace_back(it, static_cast<double>(correct) / total);
        }
      }
    } else {
      const double step = cfg.c * static_cast<double>(s.target);
      current[0] += step;
      for (std::size_t i = 0; i < m; ++i) current[i + 1] += step * s.features[i];
      run = 0;
      current_scored = false;
      current_is_pocket = false;
    }
  }

  result.weights = TluWeights(std::move(pocket));
  result.train_accuracy = static_cast<double>(pocket_correct) / total;
  result.iterations_used = it;
  return result;
}

}  // namespace pairnet
