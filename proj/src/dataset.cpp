#include "pairnet/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "pairnet/error.hpp"
#include "pairnet/seed.hpp"
#include "pairnet/text.hpp"

namespace pairnet {

Dataset::Dataset(std::vector<Example> examples, std::vector<std::string> feature_names,
                 std::vector<std::string> class_labels)
    : examples_(std::move(examples)),
      feature_names_(std::move(feature_names)),
      class_labels_(std::move(class_labels)) {
  if (feature_names_.empty()) fail(ErrorKind::Schema, "dataset needs m >= 1 features");
  if (class_labels_.size() < 2) fail(ErrorKind::Schema, "r >= 2 required");

  const std::size_t m = feature_names_.size();
  const int r = static_cast<int>(class_labels_.size());
  std::map<int, int> owner;
  for (std::size_t n = 0; n < examples_.size(); ++n) {
    const Example& ex = examples_[n];
    if (ex.features.size() != m) {
      fail(ErrorKind::Dimension, "example " + std::to_string(n) + " has " +
                                     std::to_string(ex.features.size()) +
                                     " features, expected " + std::to_string(m));
    }
    for (double v : ex.features) {
      if (!std::isfinite(v)) {
        fail(ErrorKind::Parse, "example " + std::to_string(n) + " has a non-finite feature");
      }
    }
    if (ex.class_id < 1 || ex.class_id > r) {
      fail(ErrorKind::Schema, "example " + std::to_string(n) + " class id " +
                                  std::to_string(ex.class_id) + " outside [1, " +
                                  std::to_string(r) + "]");
    }
    if (ex.record_id < 1) {
      fail(ErrorKind::Schema, "example " + std::to_string(n) + " record id must be >= 1");
    }
    auto [it, inserted] = owner.emplace(ex.record_id, ex.class_id);
    if (!inserted && it->second != ex.class_id) {
      fail(ErrorKind::Schema, "record " + std::to_string(ex.record_id) +
                                  " appears under more than one class");
    }
  }
}

std::vector<int> Dataset::record_ids() const {
  std::set<int> ids;
  for (const auto& ex : examples_) ids.insert(ex.record_id);
  return {ids.begin(), ids.end()};
}

std::map<int, int> Dataset::record_classes() const {
  std::map<int, int> out;
  for (const auto& ex : examples_) out.emplace(ex.record_id, ex.class_id);
  return out;
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(class_labels_.size(), 0);
  for (const auto& ex : examples_) ++counts[ex.class_id - 1];
  return counts;
}

Dataset Dataset::with_examples(std::vector<Example> examples) const {
  return Dataset(std::move(examples), feature_names_, class_labels_);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr std::string_view kClassColumn = "class";
constexpr std::string_view kRecordColumn = "record";

std::vector<std::string> sorted_labels(const std::set<std::string>& distinct) {
  std::vector<std::string> labels(distinct.begin(), distinct.end());
  const bool numeric = std::all_of(labels.begin(), labels.end(), [](const std::string& s) {
    return text::parse_double(s).has_value();
  });
  if (numeric) {
    std::stable_sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
      return *text::parse_double(a) < *text::parse_double(b);
    });
  }
  return labels;
}

}  // namespace

Dataset parse_csv(std::string_view content) {
  std::vector<std::string_view> lines;
  for (auto line : text::split(content, '\n')) {
    if (!text::trim(line).empty()) lines.push_back(line);
  }
  if (lines.empty()) fail(ErrorKind::EmptyInput, "CSV input is empty");

  const auto header = text::split(lines.front(), ',');
  int class_col = -1;
  int record_col = -1;
  std::vector<int> feature_cols;
  std::vector<std::string> feature_names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto name = text::trim(header[c]);
    if (name == kClassColumn) {
      if (class_col >= 0) fail(ErrorKind::Schema, "duplicate `class` column");
      class_col = static_cast<int>(c);
    } else if (name == kRecordColumn) {
      if (record_col >= 0) fail(ErrorKind::Schema, "duplicate `record` column");
      record_col = static_cast<int>(c);
    } else {
      if (name.empty()) fail(ErrorKind::Schema, "empty feature name in header");
      feature_cols.push_back(static_cast<int>(c));
      feature_names.emplace_back(name);
    }
  }
  if (class_col < 0) fail(ErrorKind::Schema, "missing mandatory `class` column");
  if (record_col < 0) fail(ErrorKind::Schema, "missing mandatory `record` column");
  if (feature_cols.empty()) fail(ErrorKind::Schema, "no feature columns");
  if (lines.size() < 2) fail(ErrorKind::EmptyInput, "CSV has a header but no rows");

  struct RawRow {
    std::vector<double> features;
    std::string label;
    int record;
  };
  std::vector<RawRow> rows;
  rows.reserve(lines.size() - 1);
  std::set<std::string> distinct;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto cells = text::split(lines[n], ',');
    const std::string row_tag = "row " + std::to_string(n + 1);
    if (cells.size() != header.size()) {
      fail(ErrorKind::Schema, row_tag + " has " + std::to_string(cells.size()) +
                                  " columns, header has " + std::to_string(header.size()));
    }
    RawRow row;
    row.features.reserve(feature_cols.size());
    for (std::size_t f = 0; f < feature_cols.size(); ++f) {
      const auto cell = cells[feature_cols[f]];
      const auto value = text::parse_double(cell);
      if (!value || !std::isfinite(*value)) {
        fail(ErrorKind::Parse, row_tag + ": feature `" + feature_names[f] +
                                   "` is not a finite number: '" + std::string(text::trim(cell)) +
                                   "'");
      }
      row.features.push_back(*value);
    }
    row.label = std::string(text::trim(cells[class_col]));
    if (row.label.empty()) fail(ErrorKind::Parse, row_tag + ": empty class label");
    const auto record = text::parse_int(cells[record_col]);
    if (!record || *record < 1 || *record > std::numeric_limits<int>::max()) {
      fail(ErrorKind::Parse, row_tag + ": record id must be an integer >= 1");
    }
    row.record = static_cast<int>(*record);
    distinct.insert(row.label);
    rows.push_back(std::move(row));
  }
  if (distinct.size() < 2) {
    fail(ErrorKind::Schema, "r >= 2 required (found " + std::to_string(distinct.size()) +
                                " distinct class)");
  }

  auto labels = sorted_labels(distinct);
  std::map<std::string, int> class_of;
  for (std::size_t k = 0; k < labels.size(); ++k) class_of[labels[k]] = static_cast<int>(k) + 1;

  std::vector<Example> examples;
  examples.reserve(rows.size());
  for (auto& row : rows) {
    examples.push_back({std::move(row.features), class_of.at(row.label), row.record});
  }
  return Dataset(std::move(examples), std::move(feature_names), std::move(labels));
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

std::string to_csv(const Dataset& ds) {
  std::string out;
  for (const auto& name : ds.feature_names()) {
    out += name;
    out += ',';
  }
  out += "class,record\n";
  for (const auto& ex : ds.examples()) {
    for (double v : ex.features) {
      out += text::format_double(v);
      out += ',';
    }
    out += ds.class_labels()[ex.class_id - 1];
    out += ',';
    out += std::to_string(ex.record_id);
    out += '\n';
  }
  return out;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << to_csv(ds);
  if (!out) fail(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// screening

ScreeningResult screen_outliers(const Dataset& ds, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorKind::Parameter, "screening k must be > 0");

  const std::size_t m = static_cast<std::size_t>(ds.m());
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t n = 0; n < ds.size(); ++n) members[ds[n].record_id].push_back(n);

  std::vector<bool> keep(ds.size(), true);
  ScreeningReport report;
  report.total_count = ds.size();

  for (const auto& [record, idx] : members) {
    if (idx.size() < 2) {
      report.unscreened_records.push_back(record);
      report.per_record_rates[record] = 0.0;
      continue;
    }
    const double count = static_cast<double>(idx.size());
    std::vector<double> mean(m, 0.0);
    std::vector<double> sd(m, 0.0);
    for (auto n : idx) {
      for (std::size_t j = 0; j < m; ++j) mean[j] += ds[n].features[j];
    }
    for (auto& v : mean) v /= count;
    for (auto n : idx) {
      for (std::size_t j = 0; j < m; ++j) {
        const double d = ds[n].features[j] - mean[j];
        sd[j] += d * d;
      }
    }
    for (auto& v : sd) v = std::sqrt(v / count);

    std::size_t removed = 0;
    for (auto n : idx) {
      for (std::size_t j = 0; j < m; ++j) {
        if (sd[j] > 0.0 && std::abs(ds[n].features[j] - mean[j]) > k * sd[j]) {
          keep[n] = false;
          break;
        }
      }
      if (!keep[n]) ++removed;
    }
    report.removed_count += removed;
    report.per_record_rates[record] = static_cast<double>(removed) / count;
  }
  report.rate = report.total_count == 0
                    ? 0.0
                    : static_cast<double>(report.removed_count) /
                          static_cast<double>(report.total_count);

  std::vector<Example> kept;
  kept.reserve(ds.size() - report.removed_count);
  for (std::size_t n = 0; n < ds.size(); ++n) {
    if (keep[n]) kept.push_back(ds[n]);
  }
  return {ds.with_examples(std::move(kept)), std::move(report)};
}

// ---------------------------------------------------------------------------
// standardization

void Standardization::apply(std::span<double> features) const {
  if (features.size() != means.size()) {
    fail(ErrorKind::Dimension, "standardization expects " + std::to_string(means.size()) +
                                   " features, got " + std::to_string(features.size()));
  }
  for (std::size_t j = 0; j < features.size(); ++j) {
    features[j] = (features[j] - means[j]) / stds[j];
  }
}

std::vector<double> Standardization::applied(std::span<const double> features) const {
  std::vector<double> out(features.begin(), features.end());
  apply(out);
  return out;
}

void Standardization::invert(std::span<double> features) const {
  if (features.size() != means.size()) {
    fail(ErrorKind::Dimension, "standardization expects " + std::to_string(means.size()) +
                                   " features, got " + std::to_string(features.size()));
  }
  for (std::size_t j = 0; j < features.size(); ++j) {
    features[j] = features[j] * stds[j] + means[j];
  }
}

Dataset Standardization::apply(const Dataset& ds) const {
  std::vector<Example> out = ds.examples();
  for (auto& ex : out) apply(std::span<double>(ex.features));
  return ds.with_examples(std::move(out));
}

Standardization fit_standardization(const Dataset& ds) {
  if (ds.empty()) fail(ErrorKind::EmptyInput, "cannot standardize an empty dataset");
  const std::size_t m = static_cast<std::size_t>(ds.m());
  const double n = static_cast<double>(ds.size());
  Standardization st{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
  for (const auto& ex : ds.examples()) {
    for (std::size_t j = 0; j < m; ++j) st.means[j] += ex.features[j];
  }
  for (auto& v : st.means) v /= n;
  for (const auto& ex : ds.examples()) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = ex.features[j] - st.means[j];
      st.stds[j] += d * d;
    }
  }
  for (auto& v : st.stds) {
    v = std::sqrt(v / n);
    if (v < kMinStd) v = 1.0;
  }
  return st;
}

StandardizeResult standardize(const Dataset& ds) {
  auto st = fit_standardization(ds);
  auto out = st.apply(ds);
  return {std::move(out), std::move(st)};
}

// ---------------------------------------------------------------------------
// split

SplitResult split_by_record(const Dataset& ds, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    fail(ErrorKind::Parameter, "test fraction must lie in (0, 1)");
  }

  std::vector<std::vector<int>> records_of_class(static_cast<std::size_t>(ds.r()));
  for (const auto& [record, cls] : ds.record_classes()) {
    records_of_class[cls - 1].push_back(record);
  }

  SplitResult result{ds.with_examples({}), ds.with_examples({}), {}};
  std::set<int> test_records;
  for (int cls = 1; cls <= ds.r(); ++cls) {
    auto& records = records_of_class[cls - 1];
    if (records.empty()) continue;
    if (records.size() < 2) {
      result.warnings.push_back("class " + ds.class_labels()[cls - 1] +
                                " has a single record; assigned to training only");
      continue;
    }
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(cls)));
    std::shuffle(records.begin(), records.end(), rng);
    const auto n = static_cast<long>(records.size());
    const long n_test =
        std::clamp(std::lround(test_fraction * static_cast<double>(n)), 1L, n - 1);
    test_records.insert(records.begin(), records.begin() + n_test);
  }

  std::vector<Example> train;
  std::vector<Example> test;
  for (const auto& ex : ds.examples()) {
    (test_records.contains(ex.record_id) ? test : train).push_back(ex);
  }
  result.train = ds.with_examples(std::move(train));
  result.test = ds.with_examples(std::move(test));
  return result;
}

}  // namespace pairnet
