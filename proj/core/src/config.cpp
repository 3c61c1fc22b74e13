#include "jcaudit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "jcaudit/errors.hpp"
#include "jcaudit/format.hpp"
#include "jcaudit/tsv.hpp"

namespace jcaudit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view s) {
    s = trim(s);
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw InputError(fmt::format("not a number: '{}'", s));
    return v;
}

template <class Int>
Int parse_int(std::string_view s) {
    s = trim(s);
    Int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw InputError(fmt::format("not an integer: '{}'", s));
    return v;
}

bool parse_bool(std::string_view s) {
    s = trim(s);
    if (s == "1" || s == "true" || s == "yes") return true;
    if (s == "0" || s == "false" || s == "no") return false;
    throw InputError(fmt::format("not a boolean: '{}'", s));
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += fmt_util::threshold_label(values[i]);
    }
    return out;
}

void check_unit(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError(fmt::format("{} {} outside [0, 1]", what, v));
}

}  // namespace

std::vector<double> parse_threshold_list(std::string_view text) {
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        if (!item.empty()) out.push_back(parse_double(item));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (out.empty()) throw InputError("empty threshold list");
    return out;
}

void AuditConfig::validate() const {
    if (window.first > window.last)
        throw InputError(fmt::format("window start {} after end {}", window.first, window.last));
    if (alpha_list.empty() || beta_list.empty()) throw InputError("threshold lists must not be empty");
    for (double a : alpha_list) check_unit(a, "alpha");
    for (double b : beta_list) check_unit(b, "beta");
    check_unit(focus_alpha, "focus_alpha");
    check_unit(focus_beta, "focus_beta");
    check_unit(rank_min_fraction, "rank_min_fraction");
    if (!(focus_alpha < focus_beta))
        throw InputError(fmt::format("focus_alpha {} must be below focus_beta {}", focus_alpha, focus_beta));
}

AuditConfig parse_config(std::string_view text, const std::string& origin) {
    AuditConfig cfg;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw InputError(origin, line_no, "expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        try {
            if (key == "window_start") cfg.window.first = parse_int<int>(value);
            else if (key == "window_end") cfg.window.last = parse_int<int>(value);
            else if (key == "alpha") cfg.alpha_list = parse_threshold_list(value);
            else if (key == "beta") cfg.beta_list = parse_threshold_list(value);
            else if (key == "min_citations") cfg.min_citations = parse_int<std::uint64_t>(value);
            else if (key == "exclude_multidisciplinary_c1") cfg.exclude_multidisciplinary_from_c1 = parse_bool(value);
            else if (key == "exclude_multidisciplinary_c2") cfg.exclude_multidisciplinary_from_c2 = parse_bool(value);
            else if (key == "focus_alpha") cfg.focus_alpha = parse_double(value);
            else if (key == "focus_beta") cfg.focus_beta = parse_double(value);
            else if (key == "rank_min_journals") cfg.rank_min_journals = parse_int<std::size_t>(value);
            else if (key == "rank_min_fraction") cfg.rank_min_fraction = parse_double(value);
            else if (key == "rank_c2_min_count") cfg.rank_c2_min_count = parse_int<std::size_t>(value);
            else if (key == "coupling_weight") {
                if (value == "shared") cfg.coupling_weight = CouplingWeight::SharedReferences;
                else if (value == "binary") cfg.coupling_weight = CouplingWeight::Binary;
                else throw InputError(fmt::format("coupling_weight must be 'shared' or 'binary', got '{}'", value));
            } else {
                throw InputError(fmt::format("unknown key '{}'", key));
            }
        } catch (const InputError& e) {
            throw InputError(origin, line_no, e.what());
        }
    }
    cfg.validate();
    return cfg;
}

AuditConfig load_config(const std::filesystem::path& path) {
    return parse_config(tsv::read_text(path), path.string());
}

std::string to_config_text(const AuditConfig& cfg) {
    std::string out;
    out += fmt::format("window_start = {}\n", cfg.window.first);
    out += fmt::format("window_end = {}\n", cfg.window.last);
    out += fmt::format("alpha = {}\n", join(cfg.alpha_list));
    out += fmt::format("beta = {}\n", join(cfg.beta_list));
    out += fmt::format("min_citations = {}\n", cfg.min_citations);
    out += fmt::format("exclude_multidisciplinary_c1 = {}\n", cfg.exclude_multidisciplinary_from_c1 ? 1 : 0);
    out += fmt::format("exclude_multidisciplinary_c2 = {}\n", cfg.exclude_multidisciplinary_from_c2 ? 1 : 0);
    out += fmt::format("focus_alpha = {}\n", fmt_util::threshold_label(cfg.focus_alpha));
    out += fmt::format("focus_beta = {}\n", fmt_util::threshold_label(cfg.focus_beta));
    out += fmt::format("rank_min_journals = {}\n", cfg.rank_min_journals);
    out += fmt::format("rank_min_fraction = {}\n", fmt_util::threshold_label(cfg.rank_min_fraction));
    out += fmt::format("rank_c2_min_count = {}\n", cfg.rank_c2_min_count);
    out += fmt::format("coupling_weight = {}\n",
                       cfg.coupling_weight == CouplingWeight::Binary ? "binary" : "shared");
    return out;
}

}  // namespace jcaudit
