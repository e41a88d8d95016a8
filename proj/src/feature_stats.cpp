#include "pairnet/feature_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pairnet/error.hpp"

namespace pairnet {

namespace {

void check_feature(const Dataset& ds, int j) {
  if (j < 0 || j >= ds.m()) {
    fail(ErrorKind::Parameter, "feature index " + std::to_string(j) + " outside [0, " +
                                   std::to_string(ds.m()) + ")");
  }
}

std::vector<std::size_t> nonempty_counts(const Dataset& ds) {
  auto counts = ds.class_counts();
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) fail(ErrorKind::EmptyInput, "class " + ds.class_labels()[k] + " is empty");
  }
  return counts;
}

// Per-class means and population variances of every feature, two passes.
struct ClassMoments {
  std::vector<std::vector<double>> mean;      // [class][feature]
  std::vector<std::vector<double>> variance;  // [class][feature]
};

ClassMoments class_moments(const Dataset& ds) {
  const auto counts = nonempty_counts(ds);
  const auto r = static_cast<std::size_t>(ds.r());
  const auto m = static_cast<std::size_t>(ds.m());
  ClassMoments cm{std::vector(r, std::vector<double>(m, 0.0)),
                  std::vector(r, std::vector<double>(m, 0.0))};
  for (const auto& ex : ds.examples()) {
    auto& row = cm.mean[ex.class_id - 1];
    for (std::size_t f = 0; f < m; ++f) row[f] += ex.features[f];
  }
  for (std::size_t c = 0; c < r; ++c) {
    for (auto& v : cm.mean[c]) v /= static_cast<double>(counts[c]);
  }
  for (const auto& ex : ds.examples()) {
    const auto& mu = cm.mean[ex.class_id - 1];
    auto& row = cm.variance[ex.class_id - 1];
    for (std::size_t f = 0; f < m; ++f) {
      const double d = ex.features[f] - mu[f];
      row[f] += d * d;
    }
  }
  for (std::size_t c = 0; c < r; ++c) {
    for (auto& v : cm.variance[c]) v /= static_cast<double>(counts[c]);
  }
  return cm;
}

double population_variance(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return acc / n;
}

}  // namespace

ClassMeanVariance class_mean_variance(const Dataset& ds, int j) {
  check_feature(ds, j);
  const auto counts = nonempty_counts(ds);
  ClassMeanVariance out;
  out.class_means.assign(counts.size(), 0.0);
  for (const auto& ex : ds.examples()) out.class_means[ex.class_id - 1] += ex.features[j];
  for (std::size_t c = 0; c < counts.size(); ++c) {
    out.class_means[c] /= static_cast<double>(counts[c]);
  }
  out.v = population_variance(out.class_means);
  return out;
}

double group_variance(const Dataset& ds, int class_id, int j) {
  check_feature(ds, j);
  if (class_id < 1 || class_id > ds.r()) fail(ErrorKind::Parameter, "class id outside [1, r]");
  std::vector<double> values;
  for (const auto& ex : ds.examples()) {
    if (ex.class_id == class_id) values.push_back(ex.features[j]);
  }
  if (values.empty()) {
    fail(ErrorKind::EmptyInput, "class " + ds.class_labels()[class_id - 1] + " is empty");
  }
  return population_variance(values);
}

SignificanceReport significance(const Dataset& ds) {
  const auto cm = class_moments(ds);
  const auto m = static_cast<std::size_t>(ds.m());
  SignificanceReport rep;
  rep.features.resize(m);

  std::vector<double> means(cm.mean.size());
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t c = 0; c < means.size(); ++c) means[c] = cm.mean[c][f];
    auto& fs = rep.features[f];
    fs.feature = static_cast<int>(f);
    fs.v = population_variance(means);
    fs.s_sum = 0.0;
    for (const auto& row : cm.variance) fs.s_sum += row[f];
    if (fs.s_sum >= kSignificanceEps) {
      fs.d = 100.0 * fs.v / fs.s_sum;
    } else {
      fs.d = fs.v >= kSignificanceEps ? std::numeric_limits<double>::infinity() : 0.0;
    }
  }

  rep.ranking.resize(m);
  std::iota(rep.ranking.begin(), rep.ranking.end(), 0);
  std::stable_sort(rep.ranking.begin(), rep.ranking.end(),
                   [&](int a, int b) { return rep.features[a].d > rep.features[b].d; });
  for (std::size_t pos = 0; pos < m; ++pos) {
    rep.features[rep.ranking[pos]].rank = static_cast<int>(pos) + 1;
  }
  return rep;
}

std::vector<ClassInterval> sigma_intervals(const Dataset& ds, int j, double k) {
  check_feature(ds, j);
  if (!(k >= 0.0) || !std::isfinite(k)) fail(ErrorKind::Parameter, "interval width k must be >= 0");
  const auto cm = class_moments(ds);
  std::vector<ClassInterval> out;
  out.reserve(cm.mean.size());
  for (std::size_t c = 0; c < cm.mean.size(); ++c) {
    const double mu = cm.mean[c][j];
    const double half = k * std::sqrt(cm.variance[c][j]);
    out.push_back({static_cast<int>(c) + 1, mu, mu - half, mu + half});
  }
  return out;
}

}  // namespace pairnet
