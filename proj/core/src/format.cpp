#include "jcaudit/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include <fmt/format.h>

namespace jcaudit::fmt_util {

namespace {
__extension__ typedef unsigned __int128 u128;
}

std::string decimal_ratio(std::uint64_t num, std::uint64_t den, int places) {
    if (den == 0) num = 0, den = 1;
    u128 scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    const u128 scaled = (static_cast<u128>(num) * scale * 2 + den) / (2 * static_cast<u128>(den));
    const auto whole = static_cast<std::uint64_t>(scaled / scale);
    const auto frac = static_cast<std::uint64_t>(scaled % scale);
    if (places == 0) return fmt::format("{}", whole);
    return fmt::format("{}.{:0{}}", whole, frac, places);
}

double rounded_ratio(std::uint64_t num, std::uint64_t den, int places) {
    return std::stod(decimal_ratio(num, den, places));
}

std::string percent_int(std::uint64_t num, std::uint64_t den) {
    return decimal_ratio(num * 100, den, 0) + "%";
}

std::string percent_2dp(std::uint64_t num, std::uint64_t den) {
    return decimal_ratio(num * 100, den, 2) + "%";
}

std::string threshold_label(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) return fmt::format("{}", value);
    return std::string(buf, ptr);
}

std::string file_safe(std::string_view id) {
    std::string out;
    out.reserve(id.size());
    for (char ch : id) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                        ch == '-' || ch == '_' || ch == '.';
        out.push_back(ok ? ch : '_');
    }
    if (out.empty() || out == "." || out == "..") out = "_" + out;
    return out;
}

}  // namespace jcaudit::fmt_util
