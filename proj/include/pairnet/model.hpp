#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "pairnet/dataset.hpp"
#include "pairnet/linear_machine.hpp"
#include "pairnet/pairwise_net.hpp"

namespace pairnet {

/// A trained classifier plus the standardization applied to raw features
/// before it sees them.
struct Model {
  std::variant<PairwiseNetwork, LinearMachine> classifier;
  std::optional<Standardization> standardization;

  int r() const;
  int m() const;
  std::string_view kind() const;  // "PAIRNET" or "LM"
  bool is_pairwise() const { return std::holds_alternative<PairwiseNetwork>(classifier); }

  /// Classifies one raw (unstandardized) feature vector.
  int classify(std::span<const double> raw) const;
  /// Classifies a vector already in the classifier's feature space.
  int classify_prepared(std::span<const double> x) const;

  friend bool operator==(const Model&, const Model&) = default;
};

}  // namespace pairnet
