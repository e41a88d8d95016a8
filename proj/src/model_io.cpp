#include "pairnet/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pairnet/error.hpp"
#include "pairnet/text.hpp"

namespace pairnet {

namespace {

constexpr std::string_view kPairMagic = "PAIRNET v1";
constexpr std::string_view kLmMagic = "LM v1";

void append_row(std::string& out, std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ' ';
    out += text::format_double(values[k]);
  }
  out += '\n';
}

class LineReader {
 public:
  explicit LineReader(std::string_view content) {
    for (auto line : text::split(content, '\n')) {
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines_.push_back(line);
    }
    while (!lines_.empty() && text::trim(lines_.back()).empty()) lines_.pop_back();
  }

  std::string_view next(const std::string& section) {
    if (pos_ >= lines_.size()) {
      fail(ErrorKind::Parse, "model v1: truncated file, missing section " + section);
    }
    return lines_[pos_++];
  }

  bool done() const { return pos_ >= lines_.size(); }
  std::size_t line_number() const { return pos_; }

  [[noreturn]] void error(const std::string& message) const {
    fail(ErrorKind::Parse, "model v1 parse error at line " + std::to_string(pos_) + ": " + message);
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
};

std::vector<double> read_row(LineReader& in, const std::string& section, std::size_t count) {
  const auto tokens = text::split_whitespace(in.next(section));
  if (tokens.size() != count) {
    in.error(section + " expects " + std::to_string(count) + " values, found " +
             std::to_string(tokens.size()));
  }
  std::vector<double> out;
  out.reserve(count);
  for (auto tok : tokens) {
    const auto v = text::parse_double(tok);
    if (!v || !std::isfinite(*v)) in.error("bad number '" + std::string(tok) + "' in " + section);
    out.push_back(*v);
  }
  return out;
}

int read_key_int(LineReader& in, std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key || token.size() <= key.size() || token[key.size()] != '=') {
    in.error("expected " + std::string(key) + "=<int>");
  }
  const auto v = text::parse_int(token.substr(key.size() + 1));
  if (!v) in.error("expected an integer for " + std::string(key));
  return static_cast<int>(*v);
}

}  // namespace

std::string serialize_model(const Model& model) {
  std::string out;
  out += model.is_pairwise() ? kPairMagic : kLmMagic;
  out += '\n';
  out += "r=" + std::to_string(model.r()) + " m=" + std::to_string(model.m()) + '\n';
  if (model.standardization) {
    out += "standardization=present\n";
    append_row(out, model.standardization->means);
    append_row(out, model.standardization->stds);
  } else {
    out += "standardization=none\n";
  }
  if (const auto* net = std::get_if<PairwiseNetwork>(&model.classifier)) {
    for (const auto& t : net->tests) {
      out += "PAIR " + std::to_string(t.i) + ' ' + std::to_string(t.j) + '\n';
      append_row(out, t.weights.w);
    }
  } else {
    const auto& lm = std::get<LinearMachine>(model.classifier);
    for (std::size_t k = 0; k < lm.weights.size(); ++k) {
      out += "CLASS " + std::to_string(k + 1) + '\n';
      append_row(out, lm.weights[k].w);
    }
  }
  return out;
}

Model parse_model(std::string_view content) {
  LineReader in(content);
  if (in.done()) fail(ErrorKind::Parse, "model v1: empty model file");

  const auto magic = text::trim(in.next("magic"));
  const bool pairwise = magic == kPairMagic;
  if (!pairwise && magic != kLmMagic) {
    in.error("bad magic line '" + std::string(magic) + "', expected 'PAIRNET v1' or 'LM v1'");
  }

  const auto dims = text::split_whitespace(in.next("dimensions"));
  if (dims.size() != 2) in.error("expected 'r=<int> m=<int>'");
  const int r = read_key_int(in, dims[0], "r");
  const int m = read_key_int(in, dims[1], "m");
  if (r < 2 || m < 1) in.error("need r >= 2 and m >= 1");

  Model model;
  const auto st_line = text::trim(in.next("standardization"));
  if (st_line == "standardization=present") {
    Standardization st;
    st.means = read_row(in, "standardization means", static_cast<std::size_t>(m));
    st.stds = read_row(in, "standardization stds", static_cast<std::size_t>(m));
    for (double s : st.stds) {
      if (!(s > 0.0)) in.error("standardization stds must be positive");
    }
    model.standardization = std::move(st);
  } else if (st_line != "standardization=none") {
    in.error("expected 'standardization=none' or 'standardization=present'");
  }

  const auto width = static_cast<std::size_t>(m) + 1;
  if (pairwise) {
    PairwiseNetwork net{r, m, {}};
    for (const auto& [i, j] : enumerate_pairs(r)) {
      const std::string section = "PAIR " + std::to_string(i) + ' ' + std::to_string(j);
      const auto head = text::split_whitespace(in.next(section));
      if (head.size() != 3 || head[0] != "PAIR" || text::parse_int(head[1]) != i ||
          text::parse_int(head[2]) != j) {
        in.error("expected '" + section + "'");
      }
      net.tests.push_back({i, j, TluWeights(read_row(in, section, width))});
    }
    model.classifier = std::move(net);
  } else {
    LinearMachine lm{r, m, {}};
    for (int k = 1; k <= r; ++k) {
      const std::string section = "CLASS " + std::to_string(k);
      const auto head = text::split_whitespace(in.next(section));
      if (head.size() != 2 || head[0] != "CLASS" || text::parse_int(head[1]) != k) {
        in.error("expected '" + section + "'");
      }
      lm.weights.emplace_back(read_row(in, section, width));
    }
    model.classifier = std::move(lm);
  }
  if (!in.done()) {
    in.next("trailer");
    in.error("unexpected content after the last section");
  }
  return model;
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write model '" + path.string() + "'");
  out << serialize_model(model);
  if (!out) fail(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open model '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace pairnet
