#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "pairnet/cli.hpp"
#include "pairnet/dataset.hpp"
#include "pairnet/model_io.hpp"
#include "pairnet/signal_io.hpp"
#include "pairnet/text.hpp"
#include "test_util.hpp"

using namespace pairnet;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pairnet");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Small 4-class synthetic dataset on disk.
std::string small_dataset(const testutil::TempDir& dir, const std::string& name = "data.csv") {
  const auto path = (dir / name).string();
  const auto res = run_cli({"gen", "--classes", "4", "--features", "12", "--records-per-class", "3,3,3,3",
                        "--segments-min", "20", "--segments-max", "40", "--informative", "4",
                        "--latent-factors", "3", "--seed", "7", "-o", path});
  REQUIRE(res.code == 0);
  return path;
}

std::string value_of(const std::string& tsv, const std::string& key) {
  for (auto line : text::split(tsv, '\n')) {
    const auto cols = text::split(line, '\t');
    if (cols.size() == 2 && cols[0] == key) return std::string(cols[1]);
  }
  return "";
}

}  // namespace

TEST_CASE("gen writes a dataset, its config and a manifest") {
  testutil::TempDir dir;
  const auto path = small_dataset(dir);
  const auto ds = load_csv(path);
  CHECK(ds.r() == 4);
  CHECK(ds.m() == 12);
  CHECK(ds.record_ids().size() == 12);
  CHECK(slurp(path + ".config").find("separation=2") != std::string::npos);
  const auto mf = nlohmann::json::parse(slurp(path + ".manifest.json"));
  CHECK(mf["command"] == "gen");
  CHECK(mf["seed"] == 7);
  CHECK(mf.contains("duration_seconds"));
}

TEST_CASE("train then evaluate round trip") {
  testutil::TempDir dir;
  const auto data = small_dataset(dir);
  const auto model = (dir / "model.txt").string();
  const auto tr = run_cli({"train", "-i", data, "-o", model, "--max-iters", "20000", "--seed", "3"});
  REQUIRE(tr.code == 0);
  CHECK(tr.out.find("model: pairnet (6 tests trained, r=4, m=12)") != std::string::npos);
  CHECK(tr.out.find("train: segment_accuracy=") != std::string::npos);
  CHECK(tr.out.find("test: segment_accuracy=") != std::string::npos);
  CHECK(load_model(model).is_pairwise());
  const auto mf = nlohmann::json::parse(slurp(model + ".manifest.json"));
  CHECK(mf["command"] == "train");
  CHECK(mf["seed"] == 3);

  const auto ev = run_cli({"evaluate", "-m", model, "-i", data});
  REQUIRE(ev.code == 0);
  CHECK(ev.out.rfind("record\tn_segments\tn_correct\tmodal_class\ttrue_class\tconfidence\n", 0) == 0);
  CHECK(ev.out.find("confusion\t1\t2\t3\t4") != std::string::npos);
  const auto seg = text::parse_double(value_of(ev.out, "segment_accuracy"));
  REQUIRE(seg);
  CHECK(*seg > 0.25);

  // The misclassified count equals the rows whose modal and true class differ.
  std::size_t wrong = 0;
  for (auto line : text::split(ev.out, '\n')) {
    const auto cols = text::split(line, '\t');
    if (cols.size() == 6 && cols[0] != "record" && cols[3] != cols[4]) ++wrong;
  }
  CHECK(value_of(ev.out, "misclassified_records") == std::to_string(wrong));

  const auto lm = (dir / "lm.txt").string();
  REQUIRE(run_cli({"train", "-i", data, "-o", lm, "--model", "lm", "--max-iters", "20000"}).code == 0);
  CHECK_FALSE(load_model(lm).is_pairwise());
}

TEST_CASE("evaluate output does not depend on the worker count") {
  testutil::TempDir dir;
  const auto data = small_dataset(dir);
  const auto model = (dir / "model.txt").string();
  REQUIRE(run_cli({"train", "-i", data, "-o", model, "--max-iters", "20000", "--jobs", "1"}).code == 0);
  const auto m1 = slurp(model);
  REQUIRE(run_cli({"train", "-i", data, "-o", model, "--max-iters", "20000", "--jobs", "4"}).code == 0);
  CHECK(slurp(model) == m1);
  const auto a = run_cli({"evaluate", "-m", model, "-i", data, "--jobs", "1"});
  const auto b = run_cli({"evaluate", "-m", model, "-i", data, "--jobs", "3"});
  CHECK(a.out == b.out);
}

TEST_CASE("PAIRNET_SEED sets the default seed") {
  testutil::TempDir dir;
  const auto data = small_dataset(dir);
  const auto model = (dir / "model.txt").string();
  ::setenv("PAIRNET_SEED", "42", 1);
  const auto with_env = run_cli({"train", "-i", data, "-o", model, "--max-iters", "5000"});
  ::unsetenv("PAIRNET_SEED");
  REQUIRE(with_env.code == 0);
  CHECK(nlohmann::json::parse(slurp(model + ".manifest.json"))["seed"] == 42);
  const auto a = slurp(model);
  REQUIRE(run_cli({"train", "-i", data, "-o", model, "--max-iters", "5000", "--seed", "42"}).code == 0);
  CHECK(slurp(model) == a);
}

TEST_CASE("significance output is deterministic and rank ordered") {
  testutil::TempDir dir;
  const auto data = small_dataset(dir);
  const auto a = run_cli({"significance", "-i", data});
  const auto b = run_cli({"significance", "-i", data});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto lines = text::split(a.out, '\n');
  CHECK(lines[0] == "feature\tv\ts_sum\td\trank");
  CHECK(text::split(lines[1], '\t')[4] == "1");
  const auto out = (dir / "sig.tsv").string();
  REQUIRE(run_cli({"significance", "-i", data, "-o", out}).code == 0);
  CHECK(slurp(out) == a.out);
  CHECK(std::filesystem::exists(out + ".manifest.json"));
}

TEST_CASE("significance prints inf for separated constant groups") {
  testutil::TempDir dir;
  const auto path = dir / "const.csv";
  {
    std::ofstream f(path);
    f << "a,b,class,record\n1,0,x,1\n1,1,x,1\n2,0,y,2\n2,1,y,2\n";
  }
  const auto res = run_cli({"significance", "-i", path.string()});
  REQUIRE(res.code == 0);
  CHECK(res.out.find("a\t0.25\t0\tinf\t1") != std::string::npos);
}

TEST_CASE("intervals by name and by column") {
  testutil::TempDir dir;
  const auto path = dir / "iv.csv";
  {
    std::ofstream f(path);
    f << "a,class,record\n0,40,1\n2,40,1\n5,41,2\n5,41,2\n";
  }
  const auto by_name = run_cli({"intervals", "-i", path.string(), "-f", "a"});
  REQUIRE(by_name.code == 0);
  CHECK(by_name.out == "class\tlabel\tmean\tlo\thi\n1\t40\t1\t-2\t4\n2\t41\t5\t5\t5\n");
  CHECK(run_cli({"intervals", "-i", path.string(), "-f", "1", "-k", "3"}).out == by_name.out);
  CHECK(run_cli({"intervals", "-i", path.string(), "-f", "nope"}).code == 2);
}

TEST_CASE("extract featurizes signal files") {
  testutil::TempDir dir;
  SignalRecording rec;
  rec.fs = 50;
  rec.class_label = "40";
  rec.record_id = 3;
  for (int t = 0; t < 1100; ++t) {
    rec.c3.push_back(std::sin(2 * 3.14159265358979 * 10 * t / 50.0));
    rec.c4.push_back(std::cos(2 * 3.14159265358979 * 5 * t / 50.0));
  }
  const auto a = dir / "a.txt";
  {
    std::ofstream f(a);
    f << format_signal(rec);
  }
  rec.class_label = "41";
  rec.record_id = 4;
  const auto b = dir / "b.txt";
  {
    std::ofstream f(b);
    f << format_signal(rec);
  }
  const auto out = (dir / "features.csv").string();
  const auto res = run_cli({"extract", a.string(), b.string(), "-o", out, "--jobs", "2"});
  REQUIRE(res.code == 0);
  CHECK(res.err.find("dropped") != std::string::npos);
  const auto ds = load_csv(out);
  CHECK(ds.size() == 4);
  CHECK(ds.m() == 72);
  CHECK(ds.feature_names()[0] == "c3.subdelta.abspow");
  CHECK(ds.class_labels() == std::vector<std::string>{"40", "41"});
  CHECK(ds[0].features[14] == doctest::Approx(0.5));  // c3.alpha.absvar
}

TEST_CASE("bench reports per-seed rows and medians") {
  const auto res = run_cli({"bench", "--classes", "4", "--features", "12", "--records-per-class", "3,3,3,3",
                        "--segments-min", "20", "--segments-max", "30", "--informative", "4",
                        "--latent-factors", "3", "--scale", "1", "--seeds", "3", "--max-iters", "5000"});
  REQUIRE(res.code == 0);
  const auto lines = text::split(res.out, '\n');
  CHECK(lines[0].rfind("seed\tmodel\t", 0) == 0);
  CHECK(res.out.find("median\tpairnet\t") != std::string::npos);
  CHECK(res.out.find("median\tlm\t") != std::string::npos);
  CHECK(res.err.find("gap") != std::string::npos);
}

TEST_CASE("exit codes") {
  testutil::TempDir dir;
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"train"}).code == 2);
  CHECK(run_cli({"train", "-i", "x.csv", "--bogus"}).code == 2);
  CHECK(run_cli({"train", "-i", (dir / "missing.csv").string()}).code == 3);

  const auto bad = dir / "bad.csv";
  {
    std::ofstream f(bad);
    f << "a,class,record\n1,1,1\noops,2,2\n";
  }
  const auto parse = run_cli({"significance", "-i", bad.string()});
  CHECK(parse.code == 3);
  CHECK(parse.err.find("row 3") != std::string::npos);

  const auto data = small_dataset(dir);
  CHECK(run_cli({"train", "-i", data, "--c", "0", "-o", (dir / "m.txt").string()}).code == 2);
  CHECK(run_cli({"train", "-i", data, "--model", "tree", "-o", (dir / "m.txt").string()}).code == 2);

  // A model for 4 classes evaluated on 2-class data.
  const auto model = (dir / "model.txt").string();
  REQUIRE(run_cli({"train", "-i", data, "-o", model, "--max-iters", "2000"}).code == 0);
  const auto two = dir / "two.csv";
  {
    std::ofstream f(two);
    f << "a,class,record\n1,1,1\n2,2,2\n";
  }
  CHECK(run_cli({"evaluate", "-m", model, "-i", two.string()}).code == 4);

  // Single-record classes train without a test split and warn.
  const auto single = dir / "single.csv";
  {
    std::ofstream f(single);
    f << "a,class,record\n1,1,1\n2,1,1\n3,2,2\n";
  }
  const auto lone = run_cli({"train", "-i", single.string(), "-o", model});
  CHECK(lone.code == 0);
  CHECK(lone.err.find("single record") != std::string::npos);

  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"--version"}).out == std::string(PAIRNET_VERSION) + "\n");
}

TEST_CASE("the installed binary maps errors to process exit codes") {
  const std::string bin = PAIRNET_CLI_PATH;
  CHECK(WEXITSTATUS(std::system((bin + " train -i /nonexistent.csv 2>/dev/null").c_str())) == 3);
  CHECK(WEXITSTATUS(std::system((bin + " frobnicate 2>/dev/null >/dev/null").c_str())) == 2);
  CHECK(WEXITSTATUS(std::system((bin + " --help >/dev/null").c_str())) == 0);
}
