#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jcaudit/aggregate.hpp"
#include "jcaudit/config.hpp"
#include "jcaudit/corpus.hpp"
#include "jcaudit/criteria.hpp"

namespace jcaudit {

enum class ExportFormat { Tsv, Json };

std::string_view extension(ExportFormat f) noexcept;

struct StatCounts {
    std::uint64_t publications = 0;
    std::uint64_t journals = 0;
    std::uint64_t categories = 0;
    std::uint64_t assignments = 0;
    std::uint64_t max_assignments_per_journal = 0;
    bool operator==(const StatCounts&) const = default;
};

/// `all` covers the whole corpus (in-window publications). `restricted`
/// keeps journals with t >= cutoff and at least one Criterion-I-eligible
/// assignment, and counts only eligible assignments.
struct CorpusStats {
    StatCounts all;
    StatCounts restricted;

    [[nodiscard]] double mean_assignments(bool restricted_set) const noexcept;
};

CorpusStats corpus_stats(const Corpus& corpus, const ProfileSet& profiles, const AuditConfig& cfg);

/// Histogram: number of assignments -> number of journals.
std::map<std::size_t, std::size_t> assignment_distribution(const Corpus& corpus);

struct SweepRow {
    double threshold = 0.0;
    std::size_t journals = 0;
    std::size_t journal_base = 0;
    std::size_t assignments = 0;      ///< Criterion I only
    std::size_t assignment_base = 0;  ///< Criterion I only
};

struct ThresholdSweep {
    std::vector<SweepRow> c1;
    std::vector<SweepRow> c2;
};

/// Criterion I percentages use the restricted population of corpus_stats;
/// Criterion II percentages use all journals with t >= cutoff, each journal
/// counted once.
ThresholdSweep threshold_sweep(const ProfileSet& profiles, const Corpus& corpus, const AuditConfig& cfg);

struct CategoryRankRow {
    CategoryIdx category;
    std::size_t journals = 0;  ///< assigned journals with t >= cutoff
    std::size_t flagged = 0;
    bool operator==(const CategoryRankRow&) const = default;
};

/// Categories with >= min_journals eligible journals of which at least
/// min_fraction satisfy Criterion I at alpha. Sorted by flagged share
/// (descending), then category id.
std::vector<CategoryRankRow> rank_problem_categories(const ProfileSet& profiles, const Corpus& corpus,
                                                     double alpha, std::size_t min_journals,
                                                     double min_fraction, const AuditConfig& cfg);

/// Categories with >= min_count Criterion II flags at beta. Sorted by flag
/// count (descending), then category id.
std::vector<CategoryRankRow> rank_missing_categories(const ProfileSet& profiles, const Corpus& corpus,
                                                     double beta, std::size_t min_count,
                                                     const AuditConfig& cfg);

struct DrilldownCandidate {
    FlagRecord flag;
    std::vector<CategoryIdx> current_categories;
};

struct DrilldownReport {
    CategoryIdx category;
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t eligible_journals = 0;            ///< assigned, t >= cutoff
    std::vector<FlagRecord> home_weak;            ///< (a) home assignment satisfies C1
    std::vector<DrilldownCandidate> candidates;   ///< (b) unassigned, satisfies C2
    std::vector<FlagRecord> other_weak;           ///< (c) other assignments satisfying C1
};

DrilldownReport field_drilldown(const ProfileSet& profiles, const Corpus& corpus, CategoryIdx category,
                                double alpha, double beta, const AuditConfig& cfg);
/// Throws UnknownKeyError for an unknown category id.
DrilldownReport field_drilldown(const ProfileSet& profiles, const Corpus& corpus, std::string_view category_id,
                                double alpha, double beta, const AuditConfig& cfg);

// Exports. All are byte-stable: fixed ordering, fixed decimal formatting.
std::string export_stats(const CorpusStats& stats, ExportFormat f);
std::string export_distribution_csv(const std::map<std::size_t, std::size_t>& histogram);
std::string export_sweep(std::span<const SweepRow> rows, Criterion criterion, ExportFormat f);
std::string export_ranking(std::span<const CategoryRankRow> rows, const Corpus& corpus, ExportFormat f);
std::string export_drilldown(const DrilldownReport& report, const Corpus& corpus, ExportFormat f);

// Human-readable tables: two decimals for r, compact percentages.
std::string render_stats(const CorpusStats& stats);
std::string render_distribution(const std::map<std::size_t, std::size_t>& histogram);
std::string render_sweep(const ThresholdSweep& sweep);

}  // namespace jcaudit
