#include "pairnet/synthgen.hpp"

#include <cmath>
#include <random>

#include "pairnet/error.hpp"
#include "pairnet/seed.hpp"
#include "pairnet/text.hpp"

namespace pairnet {

void SynthConfig::validate() const {
  if (r < 2) fail(ErrorKind::Parameter, "synthetic data needs r >= 2");
  if (m < 1) fail(ErrorKind::Parameter, "synthetic data needs m >= 1");
  if (records_per_class.size() != static_cast<std::size_t>(r)) {
    fail(ErrorKind::Parameter, "records_per_class must list r entries");
  }
  for (int n : records_per_class) {
    if (n < 1) fail(ErrorKind::Parameter, "every class needs at least one record");
  }
  if (segments_per_record.first < 1 || segments_per_record.second < segments_per_record.first) {
    fail(ErrorKind::Parameter, "segments_per_record must satisfy 1 <= min <= max");
  }
  if (informative_count < 0 || informative_count > m) {
    fail(ErrorKind::Parameter, "informative_count must lie in [0, m]");
  }
  if (!std::isfinite(separation) || separation < 0.0) {
    fail(ErrorKind::Parameter, "separation must be finite and >= 0");
  }
  if (!std::isfinite(record_effect) || record_effect < 0.0) {
    fail(ErrorKind::Parameter, "record_effect must be finite and >= 0");
  }
  if (latent_factors < 1) fail(ErrorKind::Parameter, "latent_factors must be >= 1");
  if (!(factor_loading >= 0.0 && factor_loading <= 1.0)) {
    fail(ErrorKind::Parameter, "factor_loading must lie in [0, 1]");
  }
}

SynthConfig SynthConfig::scaled(double factor) const {
  if (!(factor > 0.0)) fail(ErrorKind::Parameter, "scale factor must be > 0");
  SynthConfig out = *this;
  out.segments_per_record.first =
      std::max(1, static_cast<int>(std::lround(segments_per_record.first * factor)));
  out.segments_per_record.second = std::max(
      out.segments_per_record.first, static_cast<int>(std::lround(segments_per_record.second * factor)));
  return out;
}

SynthConfig SynthConfig::balanced(int r, int m, int records) {
  SynthConfig out;
  out.r = r;
  out.m = m;
  out.records_per_class.assign(static_cast<std::size_t>(std::max(r, 0)), records);
  out.informative_count = std::min(out.informative_count, m);
  return out;
}

std::string SynthConfig::describe() const {
  std::string out;
  out += "r=" + std::to_string(r) + '\n';
  out += "m=" + std::to_string(m) + '\n';
  out += "records_per_class=";
  for (std::size_t k = 0; k < records_per_class.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(records_per_class[k]);
  }
  out += '\n';
  out += "segments_per_record=" + std::to_string(segments_per_record.first) + ',' +
         std::to_string(segments_per_record.second) + '\n';
  out += "informative_count=" + std::to_string(informative_count) + '\n';
  out += "separation=" + text::format_double(separation) + '\n';
  out += "record_effect=" + text::format_double(record_effect) + '\n';
  out += "latent_factors=" + std::to_string(latent_factors) + '\n';
  out += "factor_loading=" + text::format_double(factor_loading) + '\n';
  out += "seed=" + std::to_string(seed) + '\n';
  return out;
}

Dataset generate(const SynthConfig& cfg) {
  cfg.validate();
  const auto m = static_cast<std::size_t>(cfg.m);
  const auto factors = static_cast<std::size_t>(cfg.latent_factors);
  const double unique = std::sqrt(1.0 - cfg.factor_loading * cfg.factor_loading);

  std::vector<std::string> labels;
  if (cfg.r == static_cast<int>(kReferenceAges.size())) {
    for (int age : kReferenceAges) labels.push_back(std::to_string(age));
  } else {
    for (int k = 1; k <= cfg.r; ++k) labels.push_back(std::to_string(k));
  }
  std::vector<std::string> names;
  for (std::size_t j = 0; j < m; ++j) names.push_back("x" + std::to_string(j + 1));

  std::vector<Example> examples;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> offset(factors);
  std::vector<double> latent(factors);
  int record = 0;
  for (int k = 1; k <= cfg.r; ++k) {
    const double center = static_cast<double>(k - 1) * cfg.separation;
    for (int q = 0; q < cfg.records_per_class[k - 1]; ++q) {
      ++record;
      std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(record)));
      std::uniform_int_distribution<int> length(cfg.segments_per_record.first,
                                                cfg.segments_per_record.second);
      const int segments = length(rng);
      for (auto& o : offset) o = cfg.record_effect * normal(rng);
      for (int s = 0; s < segments; ++s) {
        for (auto& z : latent) z = normal(rng);
        Example ex;
        ex.class_id = k;
        ex.record_id = record;
        ex.features.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
          const double mu = j < static_cast<std::size_t>(cfg.informative_count) ? center : 0.0;
          const std::size_t f = j * factors / m;
          ex.features[j] = mu + offset[f] + cfg.factor_loading * latent[f] + unique * normal(rng);
        }
        examples.push_back(std::move(ex));
      }
    }
  }
  return Dataset(std::move(examples), std::move(names), std::move(labels));
}

}  // namespace pairnet
