#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace pairnet {

inline constexpr double kSegmentSeconds = 10.0;
inline constexpr double kMinSamplingRate = 50.0;
inline constexpr double kMinTotalPower = 1e-15;

/// Two-channel segment, C3 and C4 electrodes.
struct SegmentSignal {
  std::vector<double> c3;
  std::vector<double> c4;
  double fs = 0.0;

  /// Equal channel lengths of round(fs * 10) samples, fs >= 50 Hz.
  void validate() const;
};

/// Band covering frequencies in (lo_hz, hi_hz].
struct BandSpec {
  std::string name;
  double lo_hz = 0.0;
  double hi_hz = 0.0;
};

const std::array<BandSpec, 6>& default_bands();

enum class Window { Rectangular, Hann };

struct SpectrumBin {
  double frequency = 0.0;
  double power = 0.0;
};

/// One-sided periodogram of the mean-removed signal on bins 0..n/2, scaled
/// so the powers sum to the population variance of the signal. With a Hann
/// window the spectrum is rescaled to the same total.
std::vector<SpectrumBin> periodogram(std::span<const double> signal, double fs,
                                     Window window = Window::Rectangular);

double band_power(std::span<const SpectrumBin> psd, const BandSpec& band);

/// Variance of the signal's band-limited component, rebuilt in the time
/// domain by an inverse transform of only the band's bins.
double band_variance(std::span<const double> signal, double fs, const BandSpec& band);

struct FeatureConfig {
  Window window = Window::Rectangular;
};

inline constexpr std::size_t kChannelCount = 3;
inline constexpr std::size_t kQuantityCount = 4;
inline constexpr std::size_t kFeatureCount = kChannelCount * 6 * kQuantityCount;

/// 72 features, channel-major (c3, c4, c3+c4), band-minor (default_bands()
/// order), quantity-innermost (abspow, relpow, absvar, relvar). Relative
/// quantities are shares of the 0-25 Hz total and are 0 when that total is
/// below kMinTotalPower.
std::vector<double> extract_features(const SegmentSignal& seg, const FeatureConfig& cfg = {});

/// Names matching extract_features' order, e.g. "c3.alpha.relpow".
std::vector<std::string> feature_names();

/// Column of (channel, band, quantity) in the feature vector.
constexpr std::size_t feature_index(std::size_t channel, std::size_t band, std::size_t quantity) {
  return (channel * 6 + band) * kQuantityCount + quantity;
}

}  // namespace pairnet
