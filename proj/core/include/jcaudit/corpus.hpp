#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "jcaudit/config.hpp"
#include "jcaudit/types.hpp"

namespace jcaudit {

struct Journal {
    std::string id;
    std::string title;
    bool operator==(const Journal&) const = default;
};

struct Category {
    std::string id;
    std::string label;
    bool multidisciplinary = false;
    std::optional<CategoryIdx> parent;
    bool operator==(const Category&) const = default;
};

struct Assignment {
    JournalIdx journal;
    CategoryIdx category;
    std::optional<std::string> snapshot;  ///< ISO-8601 date (YYYY-MM-DD)
    bool operator==(const Assignment&) const = default;
};

struct Publication {
    std::string id;
    JournalIdx journal;
    int year = 0;
    bool operator==(const Publication&) const = default;
};

struct CitationEdge {
    PublicationIdx citing;
    PublicationIdx cited;
    bool operator==(const CitationEdge&) const = default;
};

struct ReferenceRecord {
    PublicationIdx publication;
    RefKeyIdx key;
    bool operator==(const ReferenceRecord&) const = default;
};

/// String-keyed tables as they appear on disk, before key resolution.
/// `line` is the source line for diagnostics (0 for generated rows).
struct RawTables {
    struct JournalRow { std::string id, title; std::size_t line = 0; };
    struct CategoryRow { std::string id, label; bool multidisciplinary = false; std::string parent_id; std::size_t line = 0; };
    struct AssignmentRow { std::string journal_id, category_id, snapshot; std::size_t line = 0; };
    struct PublicationRow { std::string id, journal_id; int year = 0; std::size_t line = 0; };
    struct CitationRow { std::string citing_id, cited_id; std::size_t line = 0; };
    struct ReferenceRow { std::string pub_id, ref_key; std::size_t line = 0; };

    std::vector<JournalRow> journals;
    std::vector<CategoryRow> categories;
    std::vector<AssignmentRow> assignments;
    std::vector<PublicationRow> publications;
    std::vector<CitationRow> citations;
    std::vector<ReferenceRow> references;
    bool has_references = false;
};

/// Keeps, per journal, only the assignments of its most recent snapshot.
/// Undated assignments form one implicit snapshot older than any dated one.
/// Output is sorted by (journal, category, snapshot); the operation is
/// idempotent.
std::vector<Assignment> resolve_assignments(std::span<const Assignment> raw);

/// Immutable, fully resolved corpus. Journals and categories are stored in
/// lexicographic id order, so handle order equals id order.
class Corpus {
public:
    /// Resolves keys, validates invariants and applies resolve_assignments.
    /// Throws InputError naming the offending row.
    static Corpus from_tables(const RawTables& tables, YearRange window);

    [[nodiscard]] std::span<const Journal> journals() const noexcept { return journals_; }
    [[nodiscard]] std::span<const Category> categories() const noexcept { return categories_; }
    [[nodiscard]] std::span<const Assignment> assignments() const noexcept { return assignments_; }
    [[nodiscard]] std::span<const Publication> publications() const noexcept { return publications_; }
    [[nodiscard]] std::span<const CitationEdge> edges() const noexcept { return edges_; }
    [[nodiscard]] std::span<const ReferenceRecord> references() const noexcept { return references_; }
    [[nodiscard]] std::span<const std::string> ref_keys() const noexcept { return ref_keys_; }
    [[nodiscard]] bool has_references() const noexcept { return has_references_; }
    [[nodiscard]] YearRange window() const noexcept { return window_; }

    [[nodiscard]] std::size_t journal_count() const noexcept { return journals_.size(); }
    [[nodiscard]] std::size_t category_count() const noexcept { return categories_.size(); }

    [[nodiscard]] const Journal& journal(JournalIdx j) const { return journals_.at(j.value); }
    [[nodiscard]] const Category& category(CategoryIdx c) const { return categories_.at(c.value); }
    [[nodiscard]] const Publication& publication(PublicationIdx p) const { return publications_.at(p.value); }

    /// Sorted categories of a journal after resolution.
    [[nodiscard]] std::span<const CategoryIdx> categories_of(JournalIdx j) const;
    /// Sorted journals assigned to a category.
    [[nodiscard]] std::span<const JournalIdx> journals_in(CategoryIdx c) const;
    [[nodiscard]] bool is_assigned(JournalIdx j, CategoryIdx c) const;

    [[nodiscard]] bool in_window(PublicationIdx p) const { return window_.contains(publication(p).year); }

    [[nodiscard]] std::optional<JournalIdx> find_journal(std::string_view id) const;
    [[nodiscard]] std::optional<CategoryIdx> find_category(std::string_view id) const;
    /// Throw UnknownKeyError when absent.
    [[nodiscard]] JournalIdx journal_index(std::string_view id) const;
    [[nodiscard]] CategoryIdx category_index(std::string_view id) const;

    /// Same corpus under a different analysis window.
    [[nodiscard]] Corpus with_window(YearRange window) const;

    /// Back to string tables; from_tables(to_tables()) == *this.
    [[nodiscard]] RawTables to_tables() const;

    bool operator==(const Corpus& other) const;

private:
    Corpus() = default;
    void build_indexes();

    std::vector<Journal> journals_;
    std::vector<Category> categories_;
    std::vector<Assignment> assignments_;
    std::vector<Publication> publications_;
    std::vector<CitationEdge> edges_;
    std::vector<ReferenceRecord> references_;
    std::vector<std::string> ref_keys_;
    bool has_references_ = false;
    YearRange window_;

    std::unordered_map<std::string, JournalIdx> journal_by_id_;
    std::unordered_map<std::string, CategoryIdx> category_by_id_;
    std::vector<std::size_t> journal_cat_offsets_;
    std::vector<CategoryIdx> journal_cats_;
    std::vector<std::size_t> cat_journal_offsets_;
    std::vector<JournalIdx> cat_journals_;
};

/// Locations of the input files.
struct CorpusPaths {
    std::filesystem::path journals, categories, assignments, publications, citations;
    std::optional<std::filesystem::path> references;

    /// Standard file names inside `dir`; references.tsv only if it exists.
    static CorpusPaths in_directory(const std::filesystem::path& dir);
};

inline constexpr std::string_view kJournalsFile = "journals.tsv";
inline constexpr std::string_view kCategoriesFile = "categories.tsv";
inline constexpr std::string_view kAssignmentsFile = "assignments.tsv";
inline constexpr std::string_view kPublicationsFile = "publications.tsv";
inline constexpr std::string_view kCitationsFile = "citations.tsv";
inline constexpr std::string_view kReferencesFile = "references.tsv";

/// Reads the raw tables (files are parsed concurrently). Throws IoError for
/// a missing mandatory file, InputError for malformed rows.
RawTables read_tables(const CorpusPaths& paths);

/// read_tables + Corpus::from_tables with the window from `cfg`.
Corpus load_corpus(const CorpusPaths& paths, const AuditConfig& cfg);

/// Writes the standard files into `dir` (created if needed). references.tsv
/// is written only when `tables.has_references`.
void write_tables(const RawTables& tables, const std::filesystem::path& dir);

struct ValidationReport {
    std::vector<JournalIdx> unassigned_journals;
    std::vector<CategoryIdx> empty_categories;
    std::vector<PublicationIdx> out_of_window_publications;
    std::size_t self_citation_edges = 0;

    [[nodiscard]] std::size_t warning_count() const noexcept {
        return unassigned_journals.size() + empty_categories.size();
    }
};

/// Diagnostics only; never fails.
ValidationReport validate_corpus(const Corpus& corpus);

/// `kind<TAB>id` rows plus a self-citation summary row.
std::string validation_to_tsv(const ValidationReport& report, const Corpus& corpus);

}  // namespace jcaudit
