// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "pairnet/cli.hpp"
#include "pairnet/eeg_features.hpp"
#include "pairnet/evaluate.hpp"
#include "pairnet/feature_stats.hpp"
#include "pairnet/model_io.hpp"
#include "pairnet/parallel.hpp"
#include "pairnet/synthgen.hpp"
#include "pairnet/text.hpp"
#include "test_util.hpp"

using namespace pairnet;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Verdict()>& check) {
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  if (!v.pass) ++failures;
  std::printf("%s %d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name.c_str(), v.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// 1 ------------------------------------------------------------------------

Verdict benchmark_ordering() {
  std::ostringstream out, err;
  const auto t0 = std::chrono::steady_clock::now();
  const int code = cli::run({"pairnet", "bench", "--scale", "0.1", "--seeds", "5", "--jobs", "1"}, out, err);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (code != 0) return {false, "bench exited with " + std::to_string(code) + ": " + err.str()};
  double pn = -1, lm = -1;
  for (auto line : text::split(out.str(), '\n')) {
    const auto cols = text::split(line, '\t');
    if (cols.size() < 4 || cols[0] != "median") continue;
    const auto acc = text::parse_double(cols[3]);
    if (!acc) continue;
    (cols[1] == "pairnet" ? pn : lm) = *acc;
  }
  const double gap = 100.0 * (pn - lm);
  return {gap >= 5.0 && seconds < 120.0 && pn >= 0 && lm >= 0,
          "median test segment accuracy pairnet " + fmt(pn) + " vs lm " + fmt(lm) + ", gap " + fmt(gap) +
              " points (need >= 5), " + fmt(seconds) + " s on one worker (need < 120)"};
}

// 2 ------------------------------------------------------------------------

Verdict worked_example() {
  PairwiseNetwork net{3, 1, {}};
  // Input-independent tests: f_{1/2} = -1, f_{1/3} = +1, f_{2/3} = +1.
  net.tests = {{1, 2, TluWeights({-1.0, 0.0})}, {1, 3, TluWeights({1.0, 0.0})}, {2, 3, TluWeights({1.0, 0.0})}};
  const std::vector<double> x{0.0};
  const auto g = net_outputs(net, x);
  const int cls = net_classify(net, x);
  const bool ok = g == std::vector<int>{0, 2, -2} && cls == 2;
  return {ok, "g = (" + std::to_string(g[0]) + ", " + std::to_string(g[1]) + ", " + std::to_string(g[2]) +
                  "), class " + std::to_string(cls)};
}

// 3 ------------------------------------------------------------------------

Verdict pair_count() {
  auto cfg = SynthConfig{}.scaled(0.05);
  const auto ds = standardize(generate(cfg)).dataset;
  TrainConfig tc;
  tc.max_iterations = 2000;
  const auto res = par::train_pairwise(ds, tc);
  bool ordered = true;
  std::size_t k = 0;
  for (int i = 1; i <= 16; ++i) {
    for (int j = i + 1; j <= 16; ++j, ++k) {
      ordered = ordered && k < res.network.tests.size() && res.network.tests[k].i == i && res.network.tests[k].j == j;
    }
  }
  const auto n = res.network.tests.size();
  return {n == 120 && ordered, std::to_string(n) + " tests for r = " + std::to_string(ds.r()) +
                                   (ordered ? ", lexicographic" : ", out of order")};
}

// 4 ------------------------------------------------------------------------

Verdict zero_sum() {
  std::mt19937_64 rng(404);
  std::normal_distribution<double> normal;
  const int r = 16, m = 72;
  PairwiseNetwork net{r, m, {}};
  for (const auto& [i, j] : enumerate_pairs(r)) {
    std::vector<double> w(m + 1);
    for (auto& v : w) v = normal(rng);
    net.tests.push_back({i, j, TluWeights(std::move(w))});
  }
  std::size_t bad_sum = 0, bad_range = 0, bad_parity = 0;
  for (int n = 0; n < 10'000; ++n) {
    std::vector<double> x(m);
    for (auto& v : x) v = 2.0 * normal(rng);
    const auto g = net_outputs(net, x);
    if (std::accumulate(g.begin(), g.end(), 0) != 0) ++bad_sum;
    for (int v : g) {
      if (std::abs(v) > r - 1) ++bad_range;
      if ((v + r - 1) % 2 != 0) ++bad_parity;
    }
  }
  return {bad_sum + bad_range + bad_parity == 0,
          "10000 inputs, r = 16: " + std::to_string(bad_sum) + " nonzero sums, " + std::to_string(bad_range) +
              " out of range, " + std::to_string(bad_parity) + " parity violations"};
}

// 5 ------------------------------------------------------------------------

Verdict pocket_convergence() {
  std::mt19937_64 rng(505);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> dim(2, 10);
  int solved = 0;
  long worst = 0;
  double min_margin = 1e9;
  for (int problem = 0; problem < 20; ++problem) {
    const int m = dim(rng);
    // Standardize first, then label by a random hyperplane and drop the
    // points within 0.1 of it, so the margin holds in standardized space.
    std::vector<Example> raw;
    for (int n = 0; n < 400; ++n) {
      std::vector<double> x(m);
      for (auto& v : x) v = 5.0 * normal(rng) + 3.0;
      raw.push_back({std::move(x), 1, 1});
    }
    const auto st =
        standardize(Dataset(raw, testutil::names(m), testutil::labels(2))).dataset;
    std::vector<double> w(m);
    double norm = 0;
    for (auto& v : w) {
      v = normal(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    const double b = 0.3 * normal(rng);
    std::vector<std::vector<double>> kept;
    std::vector<int> targets;
    for (const auto& e : st.examples()) {
      double a = b;
      for (int j = 0; j < m; ++j) a += w[j] * e.features[j];
      const double margin = std::abs(a) / norm;
      if (margin < 0.1) continue;
      min_margin = std::min(min_margin, margin);
      kept.push_back(e.features);
      targets.push_back(a > 0 ? 1 : -1);
    }
    std::vector<LabeledSample> samples;
    for (std::size_t n = 0; n < kept.size(); ++n) samples.push_back({kept[n], targets[n]});
    TrainConfig cfg;
    cfg.max_iterations = 100'000;
    cfg.seed = static_cast<std::uint64_t>(problem);
    const auto res = train_pocket(samples, cfg);
    if (res.train_accuracy == 1.0) ++solved;
    worst = std::max(worst, res.iterations_used);
  }
  return {solved == 20, std::to_string(solved) + "/20 problems at accuracy 1.0 within 1e5 visits (max " +
                            std::to_string(worst) + " visits used, min margin " + fmt(min_margin) + ")"};
}

// 6 ------------------------------------------------------------------------

Verdict pocket_ratchet() {
  int monotone = 0, above_zero = 0;
  for (int run = 0; run < 100; ++run) {
    std::mt19937_64 rng(600 + run);
    std::normal_distribution<double> normal;
    std::bernoulli_distribution flip(0.15);
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int n = 0; n < 150; ++n) {
      const int t = n % 3 == 0 ? 1 : -1;
      x.push_back({normal(rng) + 0.8 * t, normal(rng), normal(rng) - 0.3 * t});
      y.push_back(flip(rng) ? -t : t);
    }
    std::vector<LabeledSample> samples;
    for (std::size_t n = 0; n < x.size(); ++n) samples.push_back({x[n], y[n]});
    TrainConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(run);
    cfg.max_iterations = 5000;
    const auto res = train_pocket(samples, cfg);
    bool ok = true;
    for (std::size_t k = 1; k < res.accuracy_history.size(); ++k) {
      ok = ok && res.accuracy_history[k].second >= res.accuracy_history[k - 1].second;
    }
    monotone += ok;
    // Zero weights output -1 everywhere.
    const double zero_acc = static_cast<double>(std::count(y.begin(), y.end(), -1)) / y.size();
    above_zero += res.train_accuracy >= zero_acc;
  }
  return {monotone == 100 && above_zero == 100,
          std::to_string(monotone) + "/100 histories non-decreasing, " + std::to_string(above_zero) +
              "/100 final >= zero-weight accuracy"};
}

// 7 ------------------------------------------------------------------------

double brute_force_d(const Dataset& ds, int j) {
  std::vector<std::vector<long double>> buckets(ds.r());
  for (const auto& e : ds.examples()) buckets[e.class_id - 1].push_back(e.features[j]);
  std::vector<long double> means;
  long double s_sum = 0;
  for (const auto& b : buckets) {
    long double mean = 0;
    for (auto v : b) mean += v;
    mean /= b.size();
    long double s = 0;
    for (auto v : b) s += (v - mean) * (v - mean);
    s_sum += s / b.size();
    means.push_back(mean);
  }
  long double grand = 0;
  for (auto mu : means) grand += mu;
  grand /= means.size();
  long double v = 0;
  for (auto mu : means) v += (mu - grand) * (mu - grand);
  v /= means.size();
  return static_cast<double>(100 * v / s_sum);
}

Verdict significance_statistic() {
  std::mt19937_64 rng(707);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> small(2, 6), count(2, 25);
  std::uniform_real_distribution<double> coef(-10, 10);
  double worst_oracle = 0, worst_affine = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int r = small(rng), m = small(rng);
    std::vector<Example> ex;
    for (int k = 1; k <= r; ++k) {
      const int n = count(rng);
      for (int s = 0; s < n; ++s) {
        std::vector<double> x(m);
        for (int j = 0; j < m; ++j) x[j] = 2.0 * normal(rng) + k * 0.5 * j;
        ex.push_back({std::move(x), k, k});
      }
    }
    const Dataset ds(ex, testutil::names(m), testutil::labels(r));
    const auto rep = significance(ds);
    for (int j = 0; j < m; ++j) worst_oracle = std::max(worst_oracle, relative_error(rep.features[j].d, brute_force_d(ds, j)));

    auto moved = ex;
    std::vector<double> a(m), b(m);
    for (int j = 0; j < m; ++j) {
      do a[j] = coef(rng); while (std::abs(a[j]) < 0.5);
      b[j] = 10 * coef(rng);
    }
    for (auto& e : moved) {
      for (int j = 0; j < m; ++j) e.features[j] = a[j] * e.features[j] + b[j];
    }
    const auto rep2 = significance(ds.with_examples(moved));
    for (int j = 0; j < m; ++j) worst_affine = std::max(worst_affine, relative_error(rep.features[j].d, rep2.features[j].d));
  }
  return {worst_oracle <= 1e-9 && worst_affine < 1e-9,
          "50 datasets: max relative error vs brute force " + fmt(worst_oracle) + ", under affine maps " +
              fmt(worst_affine) + " (need <= 1e-9)"};
}

// 8 ------------------------------------------------------------------------

Verdict featurizer() {
  std::mt19937_64 rng(808);
  std::normal_distribution<double> normal;
  double worst_parseval = 0;
  for (std::size_t n : {500u, 999u, 1000u, 2560u}) {
    std::vector<double> x(n);
    for (auto& v : x) v = 3.0 * normal(rng) + 1.0;
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double var = 0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= n;
    double sum = 0;
    for (const auto& b : periodogram(x, 100.0)) sum += b.power;
    worst_parseval = std::max(worst_parseval, relative_error(sum, var));
  }

  const double fs = 100.0;
  std::vector<double> sine(1000);
  for (std::size_t t = 0; t < sine.size(); ++t) sine[t] = std::sin(2 * std::numbers::pi * 10.0 * t / fs);
  const auto psd = periodogram(sine, fs);
  double total = 0;
  for (const auto& b : psd) total += b.power;
  const double alpha_share = band_power(psd, default_bands()[3]) / total;

  SegmentSignal seg{std::vector<double>(1000), std::vector<double>(1000), fs};
  for (auto& v : seg.c3) v = normal(rng);
  for (auto& v : seg.c4) v = normal(rng);
  const auto f = extract_features(seg);
  auto scaled = seg;
  for (auto& v : scaled.c3) v *= 3;
  for (auto& v : scaled.c4) v *= 3;
  const auto g = extract_features(scaled);
  double worst_abs = 0, worst_rel = 0;
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    for (std::size_t b = 0; b < 6; ++b) {
      for (std::size_t q : {0u, 2u}) {
        const auto k = feature_index(ch, b, q);
        worst_abs = std::max(worst_abs, relative_error(g[k], 9.0 * f[k]));
      }
      for (std::size_t q : {1u, 3u}) {
        const auto k = feature_index(ch, b, q);
        worst_rel = std::max(worst_rel, std::abs(g[k] - f[k]));
      }
    }
  }
  return {worst_parseval <= 1e-9 && alpha_share >= 0.999 && worst_abs <= 1e-9 && worst_rel <= 1e-12,
          "Parseval rel err " + fmt(worst_parseval) + ", alpha share " + fmt(alpha_share) +
              ", x3 scaling abs-feature rel err " + fmt(worst_abs) + ", rel-feature change " + fmt(worst_rel)};
}

// 9 ------------------------------------------------------------------------

Verdict screening() {
  const auto ds = generate(SynthConfig{});
  const auto rep = screen_outliers(ds, 3.0).report;
  return {rep.rate < 0.06, "removed " + std::to_string(rep.removed_count) + " of " + std::to_string(rep.total_count) +
                               " segments, rate " + fmt(rep.rate) + " (need < 0.06)"};
}

// 10 -----------------------------------------------------------------------

Verdict serialization() {
  const auto ds = generate(SynthConfig{}.scaled(0.05));
  const auto split = split_by_record(ds, 0.33, 10);
  const auto st = standardize(split.train);
  TrainConfig tc;
  tc.seed = 10;
  tc.max_iterations = 20'000;
  const auto reference = par::train_pairwise(st.dataset, tc, 1).network;
  bool jobs_ok = true;
  for (int jobs : {2, 3, 8}) jobs_ok = jobs_ok && par::train_pairwise(st.dataset, tc, jobs).network == reference;

  testutil::TempDir dir;
  std::mt19937_64 rng(1010);
  std::normal_distribution<double> normal;
  int agree = 0, checked = 0;
  bool equal_models = true;
  for (const Model& model : {Model{reference, st.standardization},
                             Model{lm_train_pocket(st.dataset, tc).machine, st.standardization}}) {
    const auto path = dir / "model.txt";
    save_model(model, path);
    const Model back = load_model(path);
    equal_models = equal_models && back == model;
    for (int n = 0; n < 1000; ++n) {
      std::vector<double> x(ds.m());
      for (auto& v : x) v = 2.0 * normal(rng);
      ++checked;
      agree += back.classify(x) == model.classify(x);
    }
    const auto serial = predict(back, split.test);
    for (int jobs : {1, 2, 5}) jobs_ok = jobs_ok && par::predict(back, split.test, jobs) == serial;
  }

  // End to end through the command line.
  const auto data = (dir / "data.csv").string();
  write_csv(ds, data);
  std::string outputs[2];
  for (int k = 0; k < 2; ++k) {
    std::ostringstream out, err;
    const auto model_path = (dir / ("cli" + std::to_string(k) + ".txt")).string();
    cli::run({"pairnet", "train", "-i", data, "-o", model_path, "--max-iters", "20000", "--jobs", k ? "4" : "1"},
             out, err);
    std::ostringstream ev, everr;
    cli::run({"pairnet", "evaluate", "-m", model_path, "-i", data, "--jobs", k ? "3" : "1"}, ev, everr);
    outputs[k] = ev.str();
  }
  jobs_ok = jobs_ok && !outputs[0].empty() && outputs[0] == outputs[1];

  return {equal_models && agree == checked && jobs_ok,
          std::to_string(agree) + "/" + std::to_string(checked) + " probes agree after save/load, models " +
              (equal_models ? "bit-identical" : "differ") + ", worker-count independence " +
              (jobs_ok ? "holds" : "violated")};
}

}  // namespace

int main() {
  report(1, "benchmark ordering", benchmark_ordering);
  report(2, "worked example", worked_example);
  report(3, "pair count", pair_count);
  report(4, "zero-sum invariant", zero_sum);
  report(5, "pocket convergence", pocket_convergence);
  report(6, "pocket ratchet", pocket_ratchet);
  report(7, "significance statistic", significance_statistic);
  report(8, "featurizer", featurizer);
  report(9, "outlier screening", screening);
  report(10, "serialization", serialization);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
