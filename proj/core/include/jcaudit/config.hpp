#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "jcaudit/types.hpp"

namespace jcaudit {

enum class CouplingWeight {
    SharedReferences,  ///< w(p,q) = number of distinct shared ref keys
    Binary,            ///< w(p,q) = 1 when p and q share any ref key
};

/// Thresholds and switches for one audit run.
///
/// The defaults reproduce the reference setup: a 2010-2014 window,
/// alpha in {0.05, 0.1, 0.2}, beta in {0.5, ..., 0.9}, and a reporting
/// cutoff of 100 citations. `focus_alpha`/`focus_beta` are the single
/// thresholds used for category rankings, the combined criterion and
/// field drill-downs.
struct AuditConfig {
    YearRange window{2010, 2014};
    std::vector<double> alpha_list{0.05, 0.1, 0.2};
    std::vector<double> beta_list{0.5, 0.6, 0.7, 0.8, 0.9};
    std::uint64_t min_citations = 100;
    bool exclude_multidisciplinary_from_c1 = true;
    bool exclude_multidisciplinary_from_c2 = false;

    double focus_alpha = 0.1;
    double focus_beta = 0.6;
    std::size_t rank_min_journals = 10;
    double rank_min_fraction = 0.5;
    std::size_t rank_c2_min_count = 10;

    CouplingWeight coupling_weight = CouplingWeight::SharedReferences;

    /// Throws InputError on out-of-range thresholds, an inverted window,
    /// or focus_alpha >= focus_beta.
    void validate() const;

    bool operator==(const AuditConfig&) const = default;
};

/// Parses the flat `key = value` format. Blank lines and `#` comments are
/// ignored; unknown keys are an error. Lists are comma separated.
AuditConfig parse_config(std::string_view text, const std::string& origin = "<config>");
AuditConfig load_config(const std::filesystem::path& path);

/// Serializes every field; parse_config(to_config_text(c)) == c.
std::string to_config_text(const AuditConfig& cfg);

std::vector<double> parse_threshold_list(std::string_view text);

}  // namespace jcaudit
