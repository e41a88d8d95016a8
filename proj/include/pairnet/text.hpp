#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pairnet::text {

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view token);
std::optional<long long> parse_int(std::string_view token);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char delimiter);
/// Splits on runs of spaces and tabs.
std::vector<std::string_view> split_whitespace(std::string_view s);

}  // namespace pairnet::text
