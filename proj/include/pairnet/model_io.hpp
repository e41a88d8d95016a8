#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pairnet/model.hpp"

namespace pairnet {

// Line-oriented text format, v1:
//
//   PAIRNET v1 | LM v1
//   r=<int> m=<int>
//   standardization=<none|present>
//   [means: m decimals]
//   [stds:  m decimals]
//   PAIR <i> <j> | CLASS <j>      repeated, lexicographic / ascending
//   <m+1 decimals, bias first>
//
// Decimals use the shortest representation that round-trips exactly.

std::string serialize_model(const Model& model);
Model parse_model(std::string_view content);

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace pairnet
