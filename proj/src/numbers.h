#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace stocksent::detail {

// Whole-string decimal parse via from_chars; nullopt on any leftover text.
std::optional<double> ParseDouble(std::string_view text);
std::optional<long> ParseLong(std::string_view text);

// Shortest decimal form that reads back to the same double.
std::string FormatDouble(double value);

std::string_view Trim(std::string_view text);

}  // namespace stocksent::detail
