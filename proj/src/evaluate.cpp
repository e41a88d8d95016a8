#include "pairnet/evaluate.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "pairnet/error.hpp"

namespace pairnet {

int Model::r() const {
  return std::visit([](const auto& c) { return c.r; }, classifier);
}

int Model::m() const {
  return std::visit([](const auto& c) { return c.m; }, classifier);
}

std::string_view Model::kind() const { return is_pairwise() ? "PAIRNET" : "LM"; }

int Model::classify_prepared(std::span<const double> x) const {
  if (const auto* net = std::get_if<PairwiseNetwork>(&classifier)) return net_classify(*net, x);
  return lm_classify(std::get<LinearMachine>(classifier), x);
}

int Model::classify(std::span<const double> raw) const {
  if (!standardization) return classify_prepared(raw);
  const auto x = standardization->applied(raw);
  return classify_prepared(x);
}

std::size_t Metrics::misclassified_records() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const RecordRow& row) {
    return row.modal_class != row.true_class;
  }));
}

Metrics evaluate_predictions(const Dataset& ds, std::span<const int> predictions) {
  if (ds.empty()) fail(ErrorKind::EmptyInput, "cannot evaluate on an empty dataset");
  if (predictions.size() != ds.size()) {
    fail(ErrorKind::Dimension, "prediction count does not match dataset size");
  }
  const auto r = static_cast<std::size_t>(ds.r());
  Metrics out;
  out.confusion.assign(r, std::vector<std::size_t>(r, 0));

  std::map<int, std::vector<int>> by_record;
  std::size_t correct = 0;
  for (std::size_t n = 0; n < ds.size(); ++n) {
    const int p = predictions[n];
    if (p < 1 || p > ds.r()) fail(ErrorKind::Dimension, "prediction outside [1, r]");
    const int truth = ds[n].class_id;
    ++out.confusion[truth - 1][p - 1];
    if (p == truth) ++correct;
    by_record[ds[n].record_id].push_back(p);
  }
  out.segment_accuracy = static_cast<double>(correct) / static_cast<double>(ds.size());

  const auto classes = ds.record_classes();
  std::size_t records_correct = 0;
  for (const auto& [record, preds] : by_record) {
    const auto rc = aggregate_record(preds, ds.r());
    RecordRow row;
    row.record_id = record;
    row.n_segments = preds.size();
    row.true_class = classes.at(record);
    row.n_correct = rc.histogram[row.true_class - 1];
    row.modal_class = rc.modal_class;
    row.confidence = rc.confidence;
    row.distribution = rc.distribution;
    if (row.modal_class == row.true_class) ++records_correct;
    out.records.push_back(std::move(row));
  }
  out.record_accuracy =
      static_cast<double>(records_correct) / static_cast<double>(out.records.size());
  return out;
}

std::vector<int> predict(const Model& model, const Dataset& ds) {
  if (ds.m() != model.m()) {
    fail(ErrorKind::Dimension, "model expects " + std::to_string(model.m()) +
                                   " features, dataset has " + std::to_string(ds.m()));
  }
  std::vector<int> out;
  out.reserve(ds.size());
  for (const auto& ex : ds.examples()) out.push_back(model.classify(ex.features));
  return out;
}

Metrics evaluate(const Model& model, const Dataset& ds) {
  if (ds.r() != model.r()) {
    fail(ErrorKind::Dimension, "model has " + std::to_string(model.r()) +
                                   " classes, dataset has " + std::to_string(ds.r()));
  }
  const auto preds = predict(model, ds);
  return evaluate_predictions(ds, preds);
}

}  // namespace pairnet
