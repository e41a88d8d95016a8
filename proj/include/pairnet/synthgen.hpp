#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pairnet/dataset.hpp"

namespace pairnet {

/// Patients per age group of the reference newborn cohort, 16 groups and
/// 65 records in total.
inline const std::vector<int> kReferenceRecordsPerClass{1, 1, 8, 7, 7, 5, 2, 2,
                                                        8, 7, 2, 5, 1, 6, 2, 1};
/// Age labels in weeks; 36 is absent from the cohort.
inline const std::vector<int> kReferenceAges{35, 37, 38, 39, 40, 41, 42, 43,
                                             44, 45, 46, 47, 48, 49, 50, 51};

/// Generator for ordinal multi-class feature data with per-record drift.
///
/// Every segment of record q in class k draws
///   x_j = mu_kj + o_{q,f(j)} + a * z_{f(j)} + sqrt(1 - a^2) * e_j
/// where mu_kj = (k - 1) * separation on the first `informative_count`
/// features and 0 elsewhere, z are per-segment shared factors and e is
/// independent unit noise. Features are split into `latent_factors`
/// contiguous blocks, f(j) = j * latent_factors / m, and o_q is one
/// N(0, record_effect^2) drift per record and block. Within-record variance
/// of every feature is 1. Keep informative_count a multiple of the block
/// size so no linear test can cancel the shared factor between an
/// informative and a non-informative feature.
struct SynthConfig {
  int r = 16;
  int m = 72;
  std::vector<int> records_per_class = kReferenceRecordsPerClass;
  std::pair<int, int> segments_per_record{300, 1518};
  int informative_count = 24;
  double separation = 2.0;
  double record_effect = 0.2;
  int latent_factors = 6;
  double factor_loading = 0.97;
  std::uint64_t seed = 1;

  void validate() const;
  /// Shrinks the per-record segment range by `factor` (e.g. 0.1 for a
  /// desk-scale benchmark).
  SynthConfig scaled(double factor) const;
  /// Balanced variant: `records` records in each of r classes.
  static SynthConfig balanced(int r, int m, int records);

  /// key=value lines, one per field.
  std::string describe() const;
};

Dataset generate(const SynthConfig& cfg);

}  // namespace pairnet
