#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace convsel {

/// Shortest decimal form that parses back to exactly the same double.
/// Locale-independent; used everywhere a floating value is written to a
/// file so that reruns are byte-identical and round trips are exact.
std::string format_double(double value);

/// Fixed-point with `decimals` fractional digits (for display fields such
/// as percentages and speedups).
std::string format_fixed(double value, int decimals);

/// Strict numeric parsers: the whole field must be consumed.
/// On failure they throw ParseError carrying `line`.
double parse_double_field(std::string_view field, std::size_t line, std::string_view what);
long parse_int_field(std::string_view field, std::size_t line, std::string_view what);

std::vector<std::string_view> split_csv_line(std::string_view line);
std::string_view trim(std::string_view s);

}  // namespace convsel
