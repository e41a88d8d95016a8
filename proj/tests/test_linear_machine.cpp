#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "pairnet/error.hpp"
#include "pairnet/linear_machine.hpp"
#include "test_util.hpp"

using namespace pairnet;

namespace {

LinearMachine machine(std::vector<std::vector<double>> rows) {
  LinearMachine lm;
  lm.r = static_cast<int>(rows.size());
  lm.m = static_cast<int>(rows.front().size()) - 1;
  for (auto& w : rows) lm.weights.emplace_back(std::move(w));
  return lm;
}

}  // namespace

TEST_CASE("lm_discriminants evaluates each class weight vector") {
  const auto lm = machine({{0, 1, 0}, {0, 0, 1}, {1, -1, -1}});
  const auto g = lm_discriminants(lm, std::vector<double>{2, 3});
  CHECK(g == std::vector<double>{2, 3, -4});
  CHECK(lm_classify(lm, std::vector<double>{2, 3}) == 2);
  CHECK(lm_classify(lm, std::vector<double>{-5, -5}) == 3);
}

TEST_CASE("property: discriminants match an explicit dot-product oracle") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<double>> rows(5, std::vector<double>(4));
    for (auto& row : rows) for (auto& v : row) v = normal(rng);
    const auto lm = machine(rows);
    std::vector<double> x(3);
    for (auto& v : x) v = normal(rng);
    const auto g = lm_discriminants(lm, x);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      double oracle = rows[k][0];
      for (std::size_t i = 0; i < x.size(); ++i) oracle += rows[k][i + 1] * x[i];
      CHECK(g[k] == doctest::Approx(oracle).epsilon(1e-14));
    }
  }
}

TEST_CASE("argmax_class breaks ties toward the lowest id") {
  CHECK(argmax_class(std::vector<double>{1, 3, 3}) == 2);
  CHECK(argmax_class(std::vector<double>{0, 0, 0}) == 1);
  CHECK(argmax_class(std::vector<double>{-1, -2, -0.5}) == 3);
  CHECK(lm_classify(LinearMachine::zeros(4, 2), std::vector<double>{1, 1}) == 1);
}

TEST_CASE("lm_train_pocket separates well-separated clusters") {
  const auto ds = testutil::blobs({{0, 0}, {10, 0}, {0, 10}, {10, 10}}, 25, 0.5, 3);
  TrainConfig cfg;
  cfg.max_iterations = 100'000;
  const auto res = lm_train_pocket(ds, cfg);
  CHECK(res.train_accuracy == 1.0);
  CHECK(lm_accuracy(res.machine, ds) == 1.0);
}

TEST_CASE("lm_train_pocket fits one example per class") {
  const auto ds = testutil::dataset_from({{{0.0, 1.0}}, {{2.0, -1.0}}, {{-3.0, 0.5}}, {{1.0, 4.0}}});
  TrainConfig cfg;
  cfg.max_iterations = 100'000;
  CHECK(lm_train_pocket(ds, cfg).train_accuracy == 1.0);
}

TEST_CASE("property: weights sum to zero across classes after training") {
  // Every correction adds c*x to one class and subtracts it from another.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto ds = testutil::blobs({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, 40, 1.0, seed);
    TrainConfig cfg;
    cfg.seed = seed;
    cfg.max_iterations = 5000;
    const auto res = lm_train_pocket(ds, cfg);
    for (int i = 0; i <= res.machine.m; ++i) {
      double sum = 0.0, scale = 0.0;
      for (const auto& w : res.machine.weights) {
        sum += w.w[i];
        scale += std::abs(w.w[i]);
      }
      CHECK(std::abs(sum) <= 1e-12 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("a single correction moves g_true - g_winner by 2c(1 + |x|^2)") {
  // Zero weights pick class 1 everywhere, so the first visit (the class-2
  // point, no shuffling) triggers exactly one correction.
  std::vector<Example> ex{{{1.5, -2.0}, 2, 2}, {{4.0, 4.0}, 1, 1}};
  const Dataset ds(ex, testutil::names(2), testutil::labels(2));
  TrainConfig cfg;
  cfg.shuffle = false;
  cfg.max_iterations = 2;
  cfg.c = 0.25;
  const auto res = lm_train_pocket(ds, cfg);
  const std::vector<double> x{1.5, -2.0};
  LinearMachine after = LinearMachine::zeros(2, 2);
  after.weights[1] = error_correct(after.weights[1], x, +1, cfg.c);
  after.weights[0] = error_correct(after.weights[0], x, -1, cfg.c);
  const auto g = lm_discriminants(after, x);
  const double norm2 = 1.0 + 1.5 * 1.5 + 2.0 * 2.0;
  CHECK(g[1] - g[0] == doctest::Approx(2 * cfg.c * norm2));
  // The corrected machine classifies both points, so the pocket takes it.
  CHECK(res.machine == after);
  CHECK(res.train_accuracy == 1.0);
}

TEST_CASE("lm_train_pocket is deterministic and its history only rises") {
  const auto ds = testutil::blobs({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, 50, 0.6, 8);
  TrainConfig cfg;
  cfg.seed = 77;
  cfg.max_iterations = 20'000;
  const auto a = lm_train_pocket(ds, cfg);
  const auto b = lm_train_pocket(ds, cfg);
  CHECK(a.machine == b.machine);
  CHECK(a.accuracy_history == b.accuracy_history);
  for (std::size_t k = 1; k < a.accuracy_history.size(); ++k) {
    CHECK(a.accuracy_history[k].second >= a.accuracy_history[k - 1].second);
  }
  CHECK(lm_accuracy(a.machine, ds) == a.train_accuracy);
}

TEST_CASE("lm_train_pocket error paths") {
  TrainConfig cfg;
  const Dataset empty({}, testutil::names(2), testutil::labels(3));
  CHECK_THROWS_AS(lm_train_pocket(empty, cfg), Error);
  // Class 3 has no examples.
  std::vector<Example> ex{{{0.0, 0.0}, 1, 1}, {{1.0, 1.0}, 2, 2}};
  const Dataset missing(ex, testutil::names(2), testutil::labels(3));
  try {
    lm_train_pocket(missing, cfg);
    FAIL("expected training error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Training);
  }
  CHECK_THROWS_AS(lm_discriminants(LinearMachine::zeros(3, 2), std::vector<double>{1.0}), Error);
}
