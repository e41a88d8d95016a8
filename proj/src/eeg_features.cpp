#include "pairnet/eeg_features.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include <fftw3.h>

#include "pairnet/error.hpp"

namespace pairnet {

namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (!p) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

class Plan {
 public:
  explicit Plan(fftw_plan p) : plan_(p) {}
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

/// Forward transform of the mean-removed signal, bins 0..n/2.
std::vector<std::complex<double>> forward(std::span<const double> signal,
                                          std::span<const double> taper = {}) {
  const std::size_t n = signal.size();
  const std::size_t bins = n / 2 + 1;
  auto in = fftw_buffer<double>(n);
  auto out = fftw_buffer<fftw_complex>(bins);
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  }
  Plan plan(raw);
  const double mean = std::accumulate(signal.begin(), signal.end(), 0.0) / static_cast<double>(n);
  for (std::size_t t = 0; t < n; ++t) {
    in[t] = signal[t] - mean;
    if (!taper.empty()) in[t] *= taper[t];
  }
  plan.execute();
  std::vector<std::complex<double>> spectrum(bins);
  for (std::size_t k = 0; k < bins; ++k) spectrum[k] = {out[k][0], out[k][1]};
  return spectrum;
}

std::vector<double> inverse(const std::vector<std::complex<double>>& spectrum, std::size_t n) {
  const std::size_t bins = n / 2 + 1;
  auto in = fftw_buffer<fftw_complex>(bins);
  auto out = fftw_buffer<double>(n);
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  }
  Plan plan(raw);
  for (std::size_t k = 0; k < bins; ++k) {
    in[k][0] = spectrum[k].real();
    in[k][1] = spectrum[k].imag();
  }
  plan.execute();
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) x[t] = out[t] / static_cast<double>(n);
  return x;
}

double bin_frequency(std::size_t k, double fs, std::size_t n) {
  return static_cast<double>(k) * fs / static_cast<double>(n);
}

bool in_band(double f, const BandSpec& band) { return f > band.lo_hz && f <= band.hi_hz; }

void check_band(const BandSpec& band, double nyquist) {
  if (!(band.lo_hz >= 0.0) || !(band.hi_hz > band.lo_hz)) {
    fail(ErrorKind::Parameter, "band '" + band.name + "' needs 0 <= lo < hi");
  }
  if (band.hi_hz > nyquist + 1e-12) {
    fail(ErrorKind::Parameter, "band '" + band.name + "' extends past the spectrum (" +
                                   std::to_string(nyquist) + " Hz)");
  }
}

double population_variance(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double acc = 0.0;
  for (double v : x) acc += (v - mean) * (v - mean);
  return acc / n;
}

void check_signal(std::span<const double> signal, double fs) {
  if (signal.size() < 2) fail(ErrorKind::Parameter, "spectral analysis needs n >= 2 samples");
  if (!(fs > 0.0) || !std::isfinite(fs)) fail(ErrorKind::Parameter, "sampling rate must be > 0");
}

}  // namespace

void SegmentSignal::validate() const {
  if (!(fs >= kMinSamplingRate) || !std::isfinite(fs)) {
    fail(ErrorKind::Parameter, "sampling rate must be >= 50 Hz to cover the 25 Hz band edge");
  }
  if (c3.size() != c4.size()) fail(ErrorKind::Dimension, "C3 and C4 lengths differ");
  const auto expected = static_cast<std::size_t>(std::lround(fs * kSegmentSeconds));
  if (c3.size() != expected) {
    fail(ErrorKind::Dimension, "segment must hold " + std::to_string(expected) +
                                   " samples per channel, has " + std::to_string(c3.size()));
  }
}

const std::array<BandSpec, 6>& default_bands() {
  static const std::array<BandSpec, 6> bands{{
      {"subdelta", 0.0, 1.5},
      {"delta", 1.5, 3.5},
      {"theta", 3.5, 7.5},
      {"alpha", 7.5, 13.5},
      {"beta1", 13.5, 19.5},
      {"beta2", 19.5, 25.0},
  }};
  return bands;
}

std::vector<SpectrumBin> periodogram(std::span<const double> signal, double fs, Window window) {
  check_signal(signal, fs);
  const std::size_t n = signal.size();
  std::vector<double> taper;
  if (window == Window::Hann) {
    taper.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
      taper[t] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(t) /
                                      static_cast<double>(n));
    }
  }
  const auto spectrum = forward(signal, taper);

  // Parseval: sum_k |X_k|^2 = n * sum_t x_t^2. Folding the mirrored half
  // onto bins 1..ceil(n/2)-1 doubles them; DC and an even-n Nyquist bin
  // appear once.
  const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  std::vector<SpectrumBin> psd(spectrum.size());
  double total = 0.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const bool single = k == 0 || (n % 2 == 0 && k == n / 2);
    psd[k].frequency = bin_frequency(k, fs, n);
    psd[k].power = (single ? 1.0 : 2.0) * std::norm(spectrum[k]) * scale;
    total += psd[k].power;
  }
  if (window == Window::Hann && total > 0.0) {
    const double target = population_variance(signal);
    for (auto& b : psd) b.power *= target / total;
  }
  return psd;
}

double band_power(std::span<const SpectrumBin> psd, const BandSpec& band) {
  if (psd.empty()) fail(ErrorKind::EmptyInput, "empty spectrum");
  check_band(band, psd.back().frequency);
  double sum = 0.0;
  for (const auto& b : psd) {
    if (in_band(b.frequency, band)) sum += b.power;
  }
  return sum;
}

double band_variance(std::span<const double> signal, double fs, const BandSpec& band) {
  check_signal(signal, fs);
  const std::size_t n = signal.size();
  check_band(band, bin_frequency(n / 2, fs, n));
  auto spectrum = forward(signal);
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    if (!in_band(bin_frequency(k, fs, n), band)) spectrum[k] = 0.0;
  }
  return population_variance(inverse(spectrum, n));
}

std::vector<double> extract_features(const SegmentSignal& seg, const FeatureConfig& cfg) {
  seg.validate();
  const auto& bands = default_bands();
  std::vector<double> sum(seg.c3.size());
  for (std::size_t t = 0; t < sum.size(); ++t) sum[t] = seg.c3[t] + seg.c4[t];
  const std::array<std::span<const double>, kChannelCount> channels{seg.c3, seg.c4, sum};

  std::vector<double> out(kFeatureCount, 0.0);
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    const auto psd = periodogram(channels[ch], seg.fs, cfg.window);
    std::array<double, 6> power{};
    std::array<double, 6> variance{};
    for (std::size_t b = 0; b < bands.size(); ++b) {
      power[b] = band_power(psd, bands[b]);
      variance[b] = band_variance(channels[ch], seg.fs, bands[b]);
    }
    const double total_power = std::accumulate(power.begin(), power.end(), 0.0);
    const double total_variance = std::accumulate(variance.begin(), variance.end(), 0.0);
    for (std::size_t b = 0; b < bands.size(); ++b) {
      out[feature_index(ch, b, 0)] = power[b];
      out[feature_index(ch, b, 1)] = total_power < kMinTotalPower ? 0.0 : power[b] / total_power;
      out[feature_index(ch, b, 2)] = variance[b];
      out[feature_index(ch, b, 3)] =
          total_variance < kMinTotalPower ? 0.0 : variance[b] / total_variance;
    }
  }
  return out;
}

std::vector<std::string> feature_names() {
  static constexpr std::array<const char*, kChannelCount> channels{"c3", "c4", "c3+c4"};
  static constexpr std::array<const char*, kQuantityCount> quantities{"abspow", "relpow",
                                                                      "absvar", "relvar"};
  std::vector<std::string> names;
  names.reserve(kFeatureCount);
  for (const char* ch : channels) {
    for (const auto& band : default_bands()) {
      for (const char* q : quantities) names.push_back(std::string(ch) + '.' + band.name + '.' + q);
    }
  }
  return names;
}

}  // namespace pairnet
