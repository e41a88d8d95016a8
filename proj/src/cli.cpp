#include "pairnet/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pairnet/dataset.hpp"
#include "pairnet/error.hpp"
#include "pairnet/evaluate.hpp"
#include "pairnet/feature_stats.hpp"
#include "pairnet/model_io.hpp"
#include "pairnet/parallel.hpp"
#include "pairnet/signal_io.hpp"
#include "pairnet/synthgen.hpp"
#include "pairnet/text.hpp"

namespace pairnet::cli {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PAIRNET_SEED")) {
    if (const auto v = text::parse_int(env); v && *v >= 0) return static_cast<std::uint64_t>(*v);
  }
  return 1;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parameter: return kUsage;
    case ErrorKind::Io:
    case ErrorKind::Schema:
    case ErrorKind::Parse:
    case ErrorKind::EmptyInput: return kData;
    case ErrorKind::Training:
    case ErrorKind::Dimension: return kTraining;
  }
  return kTraining;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

/// Writes to a file, or to the command's stdout stream for "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path_ != "-") {
      file_.open(path_, std::ios::binary);
      if (!file_) fail(ErrorKind::Io, "cannot write '" + path_ + "'");
    }
    stream_ = path_ == "-" ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }
  bool is_file() const { return path_ != "-"; }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_;
};

/// Reproducibility record written next to a command's primary output.
struct Manifest {
  std::string command;
  json config = json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> warnings;
  Clock::time_point start = Clock::now();

  void write(const std::string& path) const {
    json j;
    j["command"] = command;
    j["config"] = config;
    j["seed"] = seed;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["warnings"] = warnings;
    j["duration_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
    j["version"] = PAIRNET_VERSION;
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write manifest '" + path + "'");
    out << j.dump(2) << '\n';
  }
};

/// Manifest path: explicit flag, else next to the primary output file.
std::optional<std::string> manifest_path(const std::string& flag, const std::string& output) {
  if (!flag.empty()) return flag;
  if (!output.empty() && output != "-") return output + ".manifest.json";
  return std::nullopt;
}

struct TrainFlags {
  std::string input;
  std::string output = "model.txt";
  std::string model = "pairnet";
  double c = 1.0;
  long max_iters = TrainConfig{}.max_iterations;
  std::uint64_t seed = 1;
  bool no_standardize = false;
  double test_fraction = 0.33;
  double screen = 0.0;
  int jobs = 0;
  std::string manifest;
};

struct SynthFlags {
  SynthConfig cfg;
  std::vector<int> records_per_class;
  double scale = 1.0;
};

void add_synth_options(CLI::App* app, SynthFlags& f) {
  app->add_option("--classes", f.cfg.r, "Class count r")->check(CLI::PositiveNumber);
  app->add_option("--features", f.cfg.m, "Feature count m")->check(CLI::PositiveNumber);
  app->add_option("--records-per-class", f.records_per_class,
                  "Records per class (r values; default: reference cohort or 4 each)")
      ->delimiter(',');
  app->add_option("--segments-min", f.cfg.segments_per_record.first, "Minimum segments per record");
  app->add_option("--segments-max", f.cfg.segments_per_record.second, "Maximum segments per record");
  app->add_option("--scale", f.scale, "Multiply the segments-per-record range")
      ->check(CLI::PositiveNumber);
  app->add_option("--informative", f.cfg.informative_count, "Number of class-dependent features");
  app->add_option("--separation", f.cfg.separation, "Adjacent class mean distance (std units)");
  app->add_option("--record-effect", f.cfg.record_effect, "Per-record drift std");
  app->add_option("--latent-factors", f.cfg.latent_factors, "Shared noise factor blocks");
  app->add_option("--factor-loading", f.cfg.factor_loading, "Loading on the shared factor");
}

SynthConfig resolve_synth(const SynthFlags& f, std::uint64_t seed) {
  SynthConfig cfg = f.cfg;
  if (!f.records_per_class.empty()) {
    cfg.records_per_class = f.records_per_class;
  } else if (cfg.r != static_cast<int>(kReferenceRecordsPerClass.size())) {
    cfg.records_per_class.assign(static_cast<std::size_t>(cfg.r), 4);
  }
  cfg.seed = seed;
  if (f.scale != 1.0) cfg = cfg.scaled(f.scale);
  cfg.validate();
  return cfg;
}

json synth_json(const SynthConfig& cfg) {
  return {{"r", cfg.r},
          {"m", cfg.m},
          {"records_per_class", cfg.records_per_class},
          {"segments_per_record", {cfg.segments_per_record.first, cfg.segments_per_record.second}},
          {"informative_count", cfg.informative_count},
          {"separation", cfg.separation},
          {"record_effect", cfg.record_effect},
          {"latent_factors", cfg.latent_factors},
          {"factor_loading", cfg.factor_loading}};
}

TrainConfig train_config(double c, long max_iters, std::uint64_t seed) {
  TrainConfig tc;
  tc.c = c;
  tc.max_iterations = max_iters;
  tc.seed = seed;
  tc.validate();
  return tc;
}

struct Fitted {
  Model model;
  std::size_t tests = 0;
};

Fitted fit(const std::string& kind, const Dataset& train, const TrainConfig& tc, bool standardize_input,
           int jobs) {
  std::optional<Standardization> st;
  Dataset prepared = train;
  if (standardize_input) {
    auto res = standardize(train);
    prepared = std::move(res.dataset);
    st = std::move(res.standardization);
  }
  if (kind == "pairnet") {
    auto res = par::train_pairwise(prepared, tc, jobs);
    const auto tests = res.network.tests.size();
    return {Model{std::move(res.network), std::move(st)}, tests};
  }
  auto res = lm_train_pocket(prepared, tc);
  return {Model{std::move(res.machine), std::move(st)}, 0};
}

void print_accuracy(std::ostream& out, const std::string& split, const Metrics& m, std::size_t n) {
  out << split << ": segment_accuracy=" << fmt(m.segment_accuracy)
      << " record_accuracy=" << fmt(m.record_accuracy) << " segments=" << n
      << " records=" << m.records.size() << '\n';
}

// ---------------------------------------------------------------------------

int cmd_train(const TrainFlags& f, std::ostream& out, std::ostream& err) {
  Manifest mf;
  mf.command = "train";
  mf.seed = f.seed;
  mf.inputs = {f.input};
  mf.outputs = {f.output};
  mf.config = {{"model", f.model},         {"c", f.c},
               {"max_iters", f.max_iters}, {"no_standardize", f.no_standardize},
               {"test_fraction", f.test_fraction}, {"screen", f.screen},
               {"jobs", f.jobs}};
  const auto tc = train_config(f.c, f.max_iters, f.seed);

  Dataset ds = load_csv(f.input);
  if (f.screen > 0.0) {
    auto scr = screen_outliers(ds, f.screen);
    out << "screening: removed " << scr.report.removed_count << " of " << scr.report.total_count
        << " segments (rate " << fmt(scr.report.rate) << ")\n";
    ds = std::move(scr.dataset);
  }
  auto split = split_by_record(ds, f.test_fraction, f.seed);
  for (const auto& w : split.warnings) {
    err << "warning: " << w << '\n';
    mf.warnings.push_back(w);
  }

  const auto fitted = fit(f.model, split.train, tc, !f.no_standardize, f.jobs);
  if (f.model == "pairnet") {
    out << "model: pairnet (" << fitted.tests << " tests trained, r=" << ds.r() << ", m=" << ds.m()
        << ")\n";
  } else {
    out << "model: lm (" << ds.r() << " discriminants, m=" << ds.m() << ")\n";
  }
  print_accuracy(out, "train", evaluate_predictions(split.train, par::predict(fitted.model, split.train, f.jobs)),
                 split.train.size());
  if (!split.test.empty()) {
    print_accuracy(out, "test", evaluate_predictions(split.test, par::predict(fitted.model, split.test, f.jobs)),
                   split.test.size());
  }
  save_model(fitted.model, f.output);
  out << "wrote " << f.output << '\n';
  mf.write(*manifest_path(f.manifest, f.output));
  return kOk;
}

void write_metrics(std::ostream& out, const Metrics& m, const Dataset& ds) {
  const auto& labels = ds.class_labels();
  out << "record\tn_segments\tn_correct\tmodal_class\ttrue_class\tconfidence\n";
  for (const auto& row : m.records) {
    out << row.record_id << '\t' << row.n_segments << '\t' << row.n_correct << '\t'
        << labels[row.modal_class - 1] << '\t' << labels[row.true_class - 1] << '\t'
        << fmt(row.confidence) << '\n';
  }
  out << '\n' << "confusion";
  for (const auto& l : labels) out << '\t' << l;
  out << '\n';
  for (std::size_t t = 0; t < m.confusion.size(); ++t) {
    out << labels[t];
    for (auto c : m.confusion[t]) out << '\t' << c;
    out << '\n';
  }
  out << '\n' << "distribution";
  for (const auto& l : labels) out << '\t' << l;
  out << '\n';
  for (const auto& row : m.records) {
    out << row.record_id;
    for (double p : row.distribution) out << '\t' << fmt(p);
    out << '\n';
  }
  out << '\n'
      << "segment_accuracy\t" << fmt(m.segment_accuracy) << '\n'
      << "record_accuracy\t" << fmt(m.record_accuracy) << '\n'
      << "misclassified_records\t" << m.misclassified_records() << '\n';
}

int cmd_evaluate(const std::string& model_path, const std::string& input, const std::string& output,
                 int jobs, const std::string& manifest, std::ostream& out) {
  Manifest mf;
  mf.command = "evaluate";
  mf.inputs = {model_path, input};
  mf.outputs = {output};
  mf.config = {{"jobs", jobs}};
  const Model model = load_model(model_path);
  const Dataset ds = load_csv(input);
  if (ds.r() != model.r() || ds.m() != model.m()) {
    fail(ErrorKind::Dimension, "model is r=" + std::to_string(model.r()) + " m=" +
                                   std::to_string(model.m()) + ", data is r=" +
                                   std::to_string(ds.r()) + " m=" + std::to_string(ds.m()));
  }
  const auto metrics = evaluate_predictions(ds, par::predict(model, ds, jobs));
  Sink sink(output, out);
  write_metrics(sink.stream(), metrics, ds);
  if (auto p = manifest_path(manifest, output)) mf.write(*p);
  return kOk;
}

int cmd_significance(const std::string& input, const std::string& output,
                     const std::string& manifest, std::ostream& out) {
  Manifest mf;
  mf.command = "significance";
  mf.inputs = {input};
  mf.outputs = {output};
  const Dataset ds = load_csv(input);
  const auto rep = significance(ds);
  Sink sink(output, out);
  auto& s = sink.stream();
  s << "feature\tv\ts_sum\td\trank\n";
  for (int j : rep.ranking) {
    const auto& f = rep.features[j];
    s << ds.feature_names()[j] << '\t' << text::format_double(f.v) << '\t'
      << text::format_double(f.s_sum) << '\t' << (rep.is_sentinel(j) ? "inf" : text::format_double(f.d))
      << '\t' << f.rank << '\n';
  }
  if (auto p = manifest_path(manifest, output)) mf.write(*p);
  return kOk;
}

int resolve_feature(const Dataset& ds, const std::string& feature) {
  const auto& names = ds.feature_names();
  if (auto it = std::find(names.begin(), names.end(), feature); it != names.end()) {
    return static_cast<int>(it - names.begin());
  }
  if (const auto idx = text::parse_int(feature); idx && *idx >= 1 && *idx <= ds.m()) {
    return static_cast<int>(*idx) - 1;
  }
  fail(ErrorKind::Parameter, "unknown feature '" + feature + "' (name or 1-based column)");
}

int cmd_intervals(const std::string& input, const std::string& feature, double k,
                  const std::string& output, const std::string& manifest, std::ostream& out) {
  Manifest mf;
  mf.command = "intervals";
  mf.inputs = {input};
  mf.outputs = {output};
  mf.config = {{"feature", feature}, {"k", k}};
  const Dataset ds = load_csv(input);
  const int j = resolve_feature(ds, feature);
  const auto rows = sigma_intervals(ds, j, k);
  Sink sink(output, out);
  auto& s = sink.stream();
  s << "class\tlabel\tmean\tlo\thi\n";
  for (const auto& row : rows) {
    s << row.class_id << '\t' << ds.class_labels()[row.class_id - 1] << '\t'
      << text::format_double(row.mean) << '\t' << text::format_double(row.lo) << '\t'
      << text::format_double(row.hi) << '\n';
  }
  if (auto p = manifest_path(manifest, output)) mf.write(*p);
  return kOk;
}

int cmd_extract(const std::vector<std::string>& inputs, const std::string& class_label,
                int record_id, const std::string& output, int jobs, const std::string& manifest,
                std::ostream& out, std::ostream& err) {
  Manifest mf;
  mf.command = "extract";
  mf.inputs = inputs;
  mf.outputs = {output};
  mf.config = {{"class", class_label}, {"record", record_id}, {"jobs", jobs}};
  if (inputs.size() > 1 && record_id > 0) {
    fail(ErrorKind::Parameter, "--record applies to a single input; put record=<id> in each header");
  }

  struct Block {
    std::string label;
    int record;
    std::vector<std::vector<double>> features;
  };
  std::vector<Block> blocks;
  int next_record = 1;
  for (const auto& path : inputs) {
    const auto rec = load_signal(path);
    Block b;
    b.label = !class_label.empty() ? class_label : rec.class_label.value_or("");
    if (b.label.empty()) fail(ErrorKind::Schema, "'" + path + "' has no class label (header or --class)");
    b.record = record_id > 0 ? record_id : rec.record_id.value_or(next_record);
    next_record = std::max(next_record, b.record + 1);
    const auto seg = segment_recording(rec);
    if (seg.dropped_samples > 0) {
      const std::string w = path + ": dropped " + std::to_string(seg.dropped_samples) +
                            " trailing samples (partial segment)";
      err << "warning: " << w << '\n';
      mf.warnings.push_back(w);
    }
    if (seg.segments.empty()) fail(ErrorKind::EmptyInput, "'" + path + "' holds no full 10 s segment");
    b.features = par::extract_features(seg.segments, {}, jobs);
    blocks.push_back(std::move(b));
  }

  // Class ids follow the CSV loader's ordering so the written file reloads
  // to the same dataset.
  std::string csv;
  const auto names = feature_names();
  for (const auto& n : names) csv += n + ',';
  csv += "class,record\n";
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    for (const auto& f : b.features) {
      for (double v : f) csv += text::format_double(v) + ',';
      csv += b.label + ',' + std::to_string(b.record) + '\n';
      ++rows;
    }
  }
  {
    Sink sink(output, out);
    sink.stream() << csv;
  }
  if (output != "-") out << "wrote " << rows << " segments x " << names.size() << " features to " << output << '\n';
  if (auto p = manifest_path(manifest, output)) mf.write(*p);
  return kOk;
}

int cmd_gen(const SynthFlags& f, std::uint64_t seed, const std::string& output,
            const std::string& manifest, std::ostream& out) {
  Manifest mf;
  mf.command = "gen";
  mf.seed = seed;
  mf.outputs = {output, output + ".config"};
  const auto cfg = resolve_synth(f, seed);
  mf.config = synth_json(cfg);
  const Dataset ds = generate(cfg);
  write_csv(ds, output);
  {
    std::ofstream side(output + ".config", std::ios::binary);
    if (!side) fail(ErrorKind::Io, "cannot write '" + output + ".config'");
    side << cfg.describe();
  }
  out << "wrote " << ds.size() << " segments, " << ds.record_ids().size() << " records, r=" << ds.r()
      << ", m=" << ds.m() << " to " << output << '\n';
  mf.write(*manifest_path(manifest, output));
  return kOk;
}

struct BenchFlags {
  SynthFlags synth;
  int seeds = 5;
  std::uint64_t first_seed = 1;
  double c = 1.0;
  long max_iters = TrainConfig{}.max_iterations;
  double test_fraction = 0.33;
  double screen = 3.0;
  int jobs = 0;
  std::string output = "-";
  std::string manifest;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  if (f.seeds < 1) fail(ErrorKind::Parameter, "--seeds must be >= 1");
  Manifest mf;
  mf.command = "bench";
  mf.seed = f.first_seed;
  mf.outputs = {f.output};
  const auto base = resolve_synth(f.synth, f.first_seed);
  mf.config = {{"synth", synth_json(base)}, {"seeds", f.seeds},
               {"c", f.c},                  {"max_iters", f.max_iters},
               {"test_fraction", f.test_fraction}, {"screen", f.screen},
               {"jobs", f.jobs}};

  Sink sink(f.output, out);
  auto& s = sink.stream();
  s << "seed\tmodel\ttrain_segment_acc\ttest_segment_acc\ttest_record_acc\tsegments\tseconds\n";
  std::vector<double> pn_test, lm_test, pn_rec, lm_rec, pn_train, lm_train, pn_sec, lm_sec;
  for (int k = 0; k < f.seeds; ++k) {
    const std::uint64_t seed = f.first_seed + static_cast<std::uint64_t>(k);
    auto cfg = base;
    cfg.seed = seed;
    Dataset ds = generate(cfg);
    if (f.screen > 0.0) ds = screen_outliers(ds, f.screen).dataset;
    auto split = split_by_record(ds, f.test_fraction, seed);
    for (const auto& w : split.warnings) {
      const std::string tagged = "seed " + std::to_string(seed) + ": " + w;
      if (std::find(mf.warnings.begin(), mf.warnings.end(), tagged) == mf.warnings.end()) {
        mf.warnings.push_back(tagged);
      }
    }
    const auto tc = train_config(f.c, f.max_iters, seed);
    for (const std::string kind : {"pairnet", "lm"}) {
      const auto t0 = Clock::now();
      const auto fitted = fit(kind, split.train, tc, true, f.jobs);
      const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
      const auto tr = evaluate_predictions(split.train, par::predict(fitted.model, split.train, f.jobs));
      const auto te = evaluate_predictions(split.test, par::predict(fitted.model, split.test, f.jobs));
      s << seed << '\t' << kind << '\t' << fmt(tr.segment_accuracy) << '\t' << fmt(te.segment_accuracy)
        << '\t' << fmt(te.record_accuracy) << '\t' << ds.size() << '\t' << fmt(sec) << '\n';
      const bool pn = kind == "pairnet";
      (pn ? pn_train : lm_train).push_back(tr.segment_accuracy);
      (pn ? pn_test : lm_test).push_back(te.segment_accuracy);
      (pn ? pn_rec : lm_rec).push_back(te.record_accuracy);
      (pn ? pn_sec : lm_sec).push_back(sec);
    }
  }
  s << "median\tpairnet\t" << fmt(median(pn_train)) << '\t' << fmt(median(pn_test)) << '\t'
    << fmt(median(pn_rec)) << "\t-\t" << fmt(median(pn_sec)) << '\n';
  s << "median\tlm\t" << fmt(median(lm_train)) << '\t' << fmt(median(lm_test)) << '\t'
    << fmt(median(lm_rec)) << "\t-\t" << fmt(median(lm_sec)) << '\n';
  const double gap = 100.0 * (median(pn_test) - median(lm_test));
  if (sink.is_file()) {
    out << "wrote " << f.output << '\n';
  }
  err << "median test segment accuracy: pairnet " << fmt(median(pn_test)) << ", lm "
      << fmt(median(lm_test)) << ", gap " << fmt(gap) << " points\n";
  if (auto p = manifest_path(f.manifest, f.output)) mf.write(*p);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pairwise threshold-logic network toolkit", "pairnet"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PAIRNET_VERSION);

  const std::uint64_t env_seed = default_seed();

  TrainFlags train;
  train.seed = env_seed;
  auto* sc_train = app.add_subcommand("train", "Train a model on a dataset CSV");
  sc_train->add_option("-i,--input", train.input, "Dataset CSV")->required();
  sc_train->add_option("-o,--output", train.output, "Model file");
  sc_train->add_option("--model", train.model, "pairnet or lm")
      ->check(CLI::IsMember({"pairnet", "lm"}));
  sc_train->add_option("--c", train.c, "Correction amount c > 0");
  sc_train->add_option("--max-iters", train.max_iters, "Example visits per trainer");
  sc_train->add_option("--seed", train.seed, "Seed (default: $PAIRNET_SEED or 1)");
  sc_train->add_flag("--no-standardize", train.no_standardize, "Train on raw features");
  sc_train->add_option("--test-fraction", train.test_fraction, "Share of records held out");
  sc_train->add_option("--screen", train.screen, "3-delta screening width k (0 disables)");
  sc_train->add_option("--jobs", train.jobs, "Worker threads (0: OpenMP default)");
  sc_train->add_option("--manifest", train.manifest, "Manifest path");

  std::string ev_model, ev_input, ev_output = "-", ev_manifest;
  int ev_jobs = 0;
  auto* sc_eval = app.add_subcommand("evaluate", "Evaluate a model on a dataset CSV");
  sc_eval->add_option("-m,--model-file", ev_model, "Model file")->required();
  sc_eval->add_option("-i,--input", ev_input, "Dataset CSV")->required();
  sc_eval->add_option("-o,--output", ev_output, "Metrics TSV ('-' for stdout)");
  sc_eval->add_option("--jobs", ev_jobs, "Worker threads");
  sc_eval->add_option("--manifest", ev_manifest, "Manifest path");

  std::string sig_input, sig_output = "-", sig_manifest;
  auto* sc_sig = app.add_subcommand("significance", "Rank features by class-mean / group variance");
  sc_sig->add_option("-i,--input", sig_input, "Dataset CSV")->required();
  sc_sig->add_option("-o,--output", sig_output, "TSV ('-' for stdout)");
  sc_sig->add_option("--manifest", sig_manifest, "Manifest path");

  std::string iv_input, iv_feature, iv_output = "-", iv_manifest;
  double iv_k = 3.0;
  auto* sc_iv = app.add_subcommand("intervals", "Per-class mean +/- k sigma of one feature");
  sc_iv->add_option("-i,--input", iv_input, "Dataset CSV")->required();
  sc_iv->add_option("-f,--feature", iv_feature, "Feature name or 1-based column")->required();
  sc_iv->add_option("-k", iv_k, "Interval half-width in sigmas");
  sc_iv->add_option("-o,--output", iv_output, "TSV ('-' for stdout)");
  sc_iv->add_option("--manifest", iv_manifest, "Manifest path");

  std::vector<std::string> ex_inputs;
  std::string ex_class, ex_output, ex_manifest;
  int ex_record = 0;
  int ex_jobs = 0;
  auto* sc_ex = app.add_subcommand("extract", "Two-channel signals -> 72-feature dataset CSV");
  sc_ex->add_option("inputs", ex_inputs, "Signal files, one record each")->required();
  sc_ex->add_option("-o,--output", ex_output, "Dataset CSV")->required();
  sc_ex->add_option("--class", ex_class, "Class label (overrides file header)");
  sc_ex->add_option("--record", ex_record, "Record id (overrides file header)");
  sc_ex->add_option("--jobs", ex_jobs, "Worker threads");
  sc_ex->add_option("--manifest", ex_manifest, "Manifest path");

  SynthFlags gen;
  std::uint64_t gen_seed = env_seed;
  std::string gen_output, gen_manifest;
  auto* sc_gen = app.add_subcommand("gen", "Generate a synthetic dataset CSV");
  add_synth_options(sc_gen, gen);
  sc_gen->add_option("--seed", gen_seed, "Seed");
  sc_gen->add_option("-o,--output", gen_output, "Dataset CSV")->required();
  sc_gen->add_option("--manifest", gen_manifest, "Manifest path");

  BenchFlags bench;
  bench.first_seed = env_seed;
  bench.synth.scale = 0.1;
  auto* sc_bench = app.add_subcommand("bench", "Pairwise network vs linear machine over seeds");
  add_synth_options(sc_bench, bench.synth);
  sc_bench->add_option("--seeds", bench.seeds, "Number of seeded datasets");
  sc_bench->add_option("--seed", bench.first_seed, "First seed");
  sc_bench->add_option("--c", bench.c, "Correction amount");
  sc_bench->add_option("--max-iters", bench.max_iters, "Example visits per trainer");
  sc_bench->add_option("--test-fraction", bench.test_fraction, "Share of records held out");
  sc_bench->add_option("--screen", bench.screen, "3-delta screening width k (0 disables)");
  sc_bench->add_option("--jobs", bench.jobs, "Worker threads");
  sc_bench->add_option("-o,--output", bench.output, "TSV ('-' for stdout)");
  sc_bench->add_option("--manifest", bench.manifest, "Manifest path");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << PAIRNET_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (e.get_exit_code() == 0) return kOk;
    return kUsage;
  }

  try {
    if (*sc_train) return cmd_train(train, out, err);
    if (*sc_eval) return cmd_evaluate(ev_model, ev_input, ev_output, ev_jobs, ev_manifest, out);
    if (*sc_sig) return cmd_significance(sig_input, sig_output, sig_manifest, out);
    if (*sc_iv) return cmd_intervals(iv_input, iv_feature, iv_k, iv_output, iv_manifest, out);
    if (*sc_ex) return cmd_extract(ex_inputs, ex_class, ex_record, ex_output, ex_jobs, ex_manifest, out, err);
    if (*sc_gen) return cmd_gen(gen, gen_seed, gen_output, gen_manifest, out);
    if (*sc_bench) return cmd_bench(bench, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kTraining;
  }
  return kUsage;
}

}  // namespace pairnet::cli
