#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pairnet/eeg_features.hpp"

namespace pairnet {

/// Continuous two-channel recording of one record.
///
/// Text format: a header line `fs=<Hz>` optionally followed by
/// `class=<label>` and `record=<id>`, then one `<c3> <c4>` sample pair per
/// line (whitespace or comma separated). Lines starting with '#' are ignored.
struct SignalRecording {
  double fs = 0.0;
  std::optional<std::string> class_label;
  std::optional<int> record_id;
  std::vector<double> c3;
  std::vector<double> c4;
};

SignalRecording parse_signal(std::string_view content);
SignalRecording load_signal(const std::filesystem::path& path);
std::string format_signal(const SignalRecording& rec);

struct Segmentation {
  std::vector<SegmentSignal> segments;
  std::size_t dropped_samples = 0;  // trailing partial segment
};

/// Consecutive non-overlapping 10-second segments.
Segmentation segment_recording(const SignalRecording& rec);

}  // namespace pairnet
