#pragma once

#include <limits>
#include <vector>

#include "pairnet/dataset.hpp"

namespace pairnet {

struct ClassMeanVariance {
  double v = 0.0;                   // population variance of the class means
  std::vector<double> class_means;  // index 0 holds class 1
};

/// Between-class spread of feature j: divisor r over the r class means.
ClassMeanVariance class_mean_variance(const Dataset& ds, int j);

/// Within-class population variance (divisor N_i) of feature j in class i.
double group_variance(const Dataset& ds, int class_id, int j);

inline constexpr double kSignificanceEps = 1e-12;

struct FeatureSignificance {
  int feature = 0;  // 0-based column
  double v = 0.0;
  double s_sum = 0.0;
  /// 100 * v / s_sum. +infinity when s_sum < eps but the class means differ;
  /// 0 when both vanish.
  double d = 0.0;
  int rank = 0;     // 1 = most significant
};

struct SignificanceReport {
  std::vector<FeatureSignificance> features;  // column order
  std::vector<int> ranking;                   // columns by descending d, ties by column

  bool is_sentinel(int j) const { return features[j].d == std::numeric_limits<double>::infinity(); }
};

SignificanceReport significance(const Dataset& ds);

struct ClassInterval {
  int class_id = 0;
  double mean = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Per-class mean +/- k group standard deviations of feature j.
std::vector<ClassInterval> sigma_intervals(const Dataset& ds, int j, double k = 3.0);

}  // namespace pairnet
