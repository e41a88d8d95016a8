#include "pairnet/signal_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pairnet/error.hpp"
#include "pairnet/text.hpp"

namespace pairnet {

namespace {

std::vector<std::string_view> sample_tokens(std::string_view line) {
  std::string_view body = text::trim(line);
  std::vector<std::string_view> out;
  if (body.find(',') != std::string_view::npos) {
    for (auto tok : text::split(body, ',')) out.push_back(text::trim(tok));
  } else {
    out = text::split_whitespace(body);
  }
  return out;
}

}  // namespace

SignalRecording parse_signal(std::string_view content) {
  SignalRecording rec;
  bool have_header = false;
  std::size_t line_no = 0;
  for (auto line : text::split(content, '\n')) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const std::string where = "signal line " + std::to_string(line_no);
    if (!have_header) {
      for (auto tok : text::split_whitespace(body)) {
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos) fail(ErrorKind::Parse, where + ": expected key=value in header");
        const auto key = tok.substr(0, eq);
        const auto value = tok.substr(eq + 1);
        if (key == "fs") {
          const auto fs = text::parse_double(value);
          if (!fs || !(*fs > 0.0)) fail(ErrorKind::Parse, where + ": fs must be a positive number");
          rec.fs = *fs;
        } else if (key == "class") {
          if (value.empty()) fail(ErrorKind::Parse, where + ": empty class label");
          rec.class_label = std::string(value);
        } else if (key == "record") {
          const auto id = text::parse_int(value);
          if (!id || *id < 1) fail(ErrorKind::Parse, where + ": record must be an integer >= 1");
          rec.record_id = static_cast<int>(*id);
        } else {
          fail(ErrorKind::Parse, where + ": unknown header key '" + std::string(key) + "'");
        }
      }
      if (rec.fs <= 0.0) fail(ErrorKind::Parse, where + ": header must define fs=<Hz>");
      have_header = true;
      continue;
    }
    const auto tokens = sample_tokens(body);
    if (tokens.size() != 2) fail(ErrorKind::Parse, where + ": expected two channel columns");
    const auto a = text::parse_double(tokens[0]);
    const auto b = text::parse_double(tokens[1]);
    if (!a || !b || !std::isfinite(*a) || !std::isfinite(*b)) {
      fail(ErrorKind::Parse, where + ": non-numeric sample");
    }
    rec.c3.push_back(*a);
    rec.c4.push_back(*b);
  }
  if (!have_header) fail(ErrorKind::EmptyInput, "signal file has no header");
  return rec;
}

SignalRecording load_signal(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_signal(buf.str());
}

std::string format_signal(const SignalRecording& rec) {
  std::string out = "fs=" + text::format_double(rec.fs);
  if (rec.class_label) out += " class=" + *rec.class_label;
  if (rec.record_id) out += " record=" + std::to_string(*rec.record_id);
  out += '\n';
  for (std::size_t t = 0; t < rec.c3.size(); ++t) {
    out += text::format_double(rec.c3[t]);
    out += ' ';
    out += text::format_double(rec.c4[t]);
    out += '\n';
  }
  return out;
}

Segmentation segment_recording(const SignalRecording& rec) {
  if (!(rec.fs >= kMinSamplingRate)) {
    fail(ErrorKind::Parameter, "sampling rate must be >= 50 Hz to cover the 25 Hz band edge");
  }
  const auto len = static_cast<std::size_t>(std::lround(rec.fs * kSegmentSeconds));
  Segmentation out;
  const std::size_t n = rec.c3.size();
  std::size_t start = 0;
  for (; start + len <= n; start += len) {
    SegmentSignal seg;
    seg.fs = rec.fs;
    seg.c3.assign(rec.c3.begin() + static_cast<long>(start), rec.c3.begin() + static_cast<long>(start + len));
    seg.c4.assign(rec.c4.begin() + static_cast<long>(start), rec.c4.begin() + static_cast<long>(start + len));
    out.segments.push_back(std::move(seg));
  }
  out.dropped_samples = n - start;
  return out;
}

}  // namespace pairnet
