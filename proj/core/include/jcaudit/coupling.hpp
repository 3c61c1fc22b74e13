#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "jcaudit/aggregate.hpp"
#include "jcaudit/config.hpp"
#include "jcaudit/corpus.hpp"

namespace jcaudit {

/// Bibliographic-coupling weight between a journal and each category.
struct CouplingProfile {
    JournalIdx journal;
    CategoryCounts per_category;
    bool operator==(const CouplingProfile&) const = default;
};

class CouplingSet {
public:
    CouplingSet(std::vector<CouplingProfile> profiles,
                std::unordered_map<std::uint64_t, std::uint64_t> journal_weights)
        : profiles_(std::move(profiles)), journal_weights_(std::move(journal_weights)) {}

    [[nodiscard]] const CouplingProfile& operator[](JournalIdx j) const { return profiles_.at(j.value); }
    [[nodiscard]] std::span<const CouplingProfile> profiles() const noexcept { return profiles_; }

    /// Symmetric journal-level weight; 0 for i == j.
    [[nodiscard]] std::uint64_t journal_weight(JournalIdx i, JournalIdx j) const;

private:
    std::vector<CouplingProfile> profiles_;
    std::unordered_map<std::uint64_t, std::uint64_t> journal_weights_;  // key: lo << 32 | hi
};

/// Couples every pair of in-window publications from different journals.
/// Throws MissingReferencesError if the corpus has no reference data.
CouplingSet build_coupling_profiles(const Corpus& corpus,
                                    CouplingWeight weight = CouplingWeight::SharedReferences,
                                    unsigned threads = 1);

/// Category with the largest count, ignoring multidisciplinary categories
/// when `exclude_multidisciplinary`. Ties go to the smallest category id;
/// an all-zero vector yields nullopt.
std::optional<CategoryIdx> strongest_category(const CategoryCounts& counts, const Corpus& corpus,
                                              bool exclude_multidisciplinary = true);

struct RelationKindRow {
    JournalIdx journal;
    std::optional<CategoryIdx> strongest_direct;
    std::optional<CategoryIdx> strongest_coupling;
    bool agree = false;
};

struct RelationKindComparison {
    CategoryIdx category;
    std::vector<RelationKindRow> rows;  ///< journals in `category` with t >= cutoff
    std::size_t home_strongest_direct = 0;
    std::size_t home_strongest_coupling = 0;

    /// Fraction of rows that agree; 1 when there are no rows.
    [[nodiscard]] double agreement_rate() const noexcept;
};

RelationKindComparison compare_relation_kinds(const Corpus& corpus, const ProfileSet& profiles,
                                              const CouplingSet& coupling, CategoryIdx category,
                                              const AuditConfig& cfg);

/// Builds both profile kinds; throws UnknownKeyError for an unknown id.
RelationKindComparison compare_relation_kinds(const Corpus& corpus, std::string_view category_id,
                                              const AuditConfig& cfg, unsigned threads = 1);

/// `journal_id  strongest_direct  strongest_coupling  agree`.
std::string comparison_to_tsv(const RelationKindComparison& cmp, const Corpus& corpus);
std::string comparison_to_json(const RelationKindComparison& cmp, const Corpus& corpus);

}  // namespace jcaudit
