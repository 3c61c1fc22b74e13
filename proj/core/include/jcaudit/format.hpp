#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace jcaudit::fmt_util {

/// num/den rounded half-up to `places` decimals using integer arithmetic.
/// den == 0 renders as zero.
std::string decimal_ratio(std::uint64_t num, std::uint64_t den, int places);

/// decimal_ratio parsed back to a double, for JSON output.
double rounded_ratio(std::uint64_t num, std::uint64_t den, int places);

/// Integer percentage, e.g. "86%".
std::string percent_int(std::uint64_t num, std::uint64_t den);

/// Two-decimal percentage, e.g. "2.14%".
std::string percent_2dp(std::uint64_t num, std::uint64_t den);

/// Shortest round-trip decimal for a threshold ("0.1", "0.05").
std::string threshold_label(double value);

/// Replaces characters that are unsafe in file names with '_'.
std::string file_safe(std::string_view id);

}  // namespace jcaudit::fmt_util
