#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pairnet {

/// One labeled segment. The stored vector excludes the constant x0 = 1;
/// operations that need the extended vector prepend it implicitly.
struct Example {
  std::vector<double> features;
  int class_id = 0;   // 1..r
  int record_id = 0;  // >= 1

  friend bool operator==(const Example&, const Example&) = default;
};

/// Labeled feature vectors grouped by record and class. Immutable once
/// constructed; every constructor path validates the invariants.
class Dataset {
 public:
  Dataset(std::vector<Example> examples, std::vector<std::string> feature_names,
          std::vector<std::string> class_labels);

  const std::vector<Example>& examples() const noexcept { return examples_; }
  const Example& operator[](std::size_t i) const { return examples_[i]; }
  std::size_t size() const noexcept { return examples_.size(); }
  bool empty() const noexcept { return examples_.empty(); }

  int m() const noexcept { return static_cast<int>(feature_names_.size()); }
  int r() const noexcept { return static_cast<int>(class_labels_.size()); }
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
  const std::vector<std::string>& class_labels() const noexcept { return class_labels_; }

  /// Record ids in ascending order.
  std::vector<int> record_ids() const;
  /// Class of each record.
  std::map<int, int> record_classes() const;
  /// Example count per class, index 0 holding class 1.
  std::vector<std::size_t> class_counts() const;

  /// Same metadata, different examples.
  Dataset with_examples(std::vector<Example> examples) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<Example> examples_;
  std::vector<std::string> feature_names_;
  std::vector<std::string> class_labels_;
};

// ---------------------------------------------------------------------------
// CSV

/// Reads `f1,...,fm,class,record` (the two reserved columns may appear at any
/// position). Distinct class labels are sorted (numerically when every label
/// is numeric) and remapped to 1..r.
Dataset load_csv(const std::filesystem::path& path);
Dataset parse_csv(std::string_view content);

void write_csv(const Dataset& ds, const std::filesystem::path& path);
std::string to_csv(const Dataset& ds);

// ---------------------------------------------------------------------------
// 3-delta screening

struct ScreeningReport {
  std::size_t removed_count = 0;
  std::size_t total_count = 0;
  double rate = 0.0;
  std::map<int, double> per_record_rates;
  /// Records with fewer than two segments, passed through unscreened.
  std::vector<int> unscreened_records;
};

struct ScreeningResult {
  Dataset dataset;
  ScreeningReport report;
};

/// Drops every example with any feature farther than k record-standard-
/// deviations from its record mean. Zero-deviation features never trigger.
ScreeningResult screen_outliers(const Dataset& ds, double k = 3.0);

// ---------------------------------------------------------------------------
// standardization

struct Standardization {
  std::vector<double> means;
  std::vector<double> stds;

  int m() const noexcept { return static_cast<int>(means.size()); }
  void apply(std::span<double> features) const;
  std::vector<double> applied(std::span<const double> features) const;
  void invert(std::span<double> features) const;
  Dataset apply(const Dataset& ds) const;

  friend bool operator==(const Standardization&, const Standardization&) = default;
};

inline constexpr double kMinStd = 1e-12;

Standardization fit_standardization(const Dataset& ds);

struct StandardizeResult {
  Dataset dataset;
  Standardization standardization;
};

StandardizeResult standardize(const Dataset& ds);

// ---------------------------------------------------------------------------
// record-level split

struct SplitResult {
  Dataset train;
  Dataset test;
  std::vector<std::string> warnings;
};

/// Assigns whole records to train or test, class by class, so that each
/// class with at least two records lands in both splits.
SplitResult split_by_record(const Dataset& ds, double test_fraction, std::uint64_t seed);

}  // namespace pairnet
