#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jcaudit/aggregate.hpp"
#include "jcaudit/config.hpp"
#include "jcaudit/corpus.hpp"

namespace jcaudit {

/// n / t, or 0 when t == 0. Throws Error when n > t > 0 (a counting bug).
double relatedness(std::uint64_t n, std::uint64_t t);

enum class Criterion { C1, C2 };

std::string_view criterion_name(Criterion c) noexcept;

struct FlagRecord {
    JournalIdx journal;
    CategoryIdx category;
    double relatedness = 0.0;
    std::uint64_t n = 0;
    std::uint64_t t = 0;
    Criterion criterion = Criterion::C1;
    bool assigned = true;
    bool operator==(const FlagRecord&) const = default;
};

struct CategoryScore {
    CategoryIdx category;
    std::uint64_t n = 0;
    double relatedness = 0.0;
    bool operator==(const CategoryScore&) const = default;
};

struct CombinedRecord {
    JournalIdx journal;
    std::uint64_t t = 0;
    std::vector<CategoryScore> c1_part;  ///< every eligible assignment
    std::vector<CategoryScore> c2_part;  ///< unassigned categories with r >= beta
    bool operator==(const CombinedRecord&) const = default;
};

/// Whether a category takes part in Criterion I / II under `cfg`.
bool eligible_for_c1(const Category& c, const AuditConfig& cfg) noexcept;
bool eligible_for_c2(const Category& c, const AuditConfig& cfg) noexcept;

/// Assigned pairs with r <= alpha, for journals with t >= min_citations.
/// Sorted by (journal_id, category_id).
std::vector<FlagRecord> criterion_one(const ProfileSet& profiles, const Corpus& corpus,
                                      double alpha, const AuditConfig& cfg);

/// Unassigned pairs with r >= beta, for journals with t >= min_citations.
std::vector<FlagRecord> criterion_two(const ProfileSet& profiles, const Corpus& corpus,
                                      double beta, const AuditConfig& cfg);

/// Journals whose every eligible assignment satisfies Criterion I and that
/// have at least one Criterion II category. Journals without eligible
/// assignments are skipped. Throws InputError unless alpha < beta.
std::vector<CombinedRecord> combined(const ProfileSet& profiles, const Corpus& corpus,
                                     double alpha, double beta, const AuditConfig& cfg);

struct FlagSummary {
    std::size_t journals = 0;
    std::size_t assignments = 0;
    bool operator==(const FlagSummary&) const = default;
};

/// A journal with several flagged pairs is counted once.
FlagSummary journal_flag_summary(std::span<const FlagRecord> flags);

/// `journal_id  category_id  n  t  r  assigned`, r with 6 decimals.
std::string flags_to_tsv(std::span<const FlagRecord> flags, const Corpus& corpus);
std::string flags_to_json(std::span<const FlagRecord> flags, const Corpus& corpus);

std::string combined_to_tsv(std::span<const CombinedRecord> records, const Corpus& corpus);
std::string combined_to_json(std::span<const CombinedRecord> records, const Corpus& corpus);

}  // namespace jcaudit
