#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jcaudit/aggregate.hpp"
#include "jcaudit/corpus.hpp"
#include "jcaudit/criteria.hpp"

namespace jcaudit::synth {

/// Description of a planted-error corpus.
///
/// Each journal has a true category that drives its citation behaviour.
/// A citation first picks a category (weight `affinity` for the journal's
/// own categories, 1 for every other), then a uniform journal among that
/// category's members, then a uniform publication. Self-journal targets are
/// redrawn. Misassigned journals cite like their true category but are
/// recorded in a different one; missing-assignment journals behave as
/// members of two categories and are recorded in only the first.
struct SyntheticSpec {
    std::uint32_t categories = 10;
    std::uint32_t journals_per_category = 20;
    std::uint32_t publications_per_journal = 20;
    double expected_citations = 20.0;  ///< per publication, Poisson mean
    double affinity = 9.0;
    std::uint32_t planted_misassignments = 0;
    std::uint32_t planted_missing = 0;
    std::uint64_t seed = 42;

    double self_citation_rate = 0.0;  ///< extra same-journal edges per publication
    std::uint32_t references_per_publication = 10;
    std::uint32_t reference_pool_per_category = 200;
    YearRange years{2010, 2014};

    /// Throws InputError when an invariant is violated.
    void validate() const;
    bool operator==(const SyntheticSpec&) const = default;
};

std::string spec_to_json(const SyntheticSpec& spec);
SyntheticSpec spec_from_json(std::string_view text);

enum class ErrorKind { None, Misassigned, MissingAssignment };

std::string_view error_kind_name(ErrorKind k) noexcept;

struct TruthEntry {
    std::string journal_id;
    std::vector<std::string> true_categories;      ///< behaviour categories
    std::vector<std::string> recorded_categories;
    ErrorKind kind = ErrorKind::None;
    bool operator==(const TruthEntry&) const = default;
};

struct GroundTruth {
    std::vector<TruthEntry> journals;  ///< sorted by journal id

    [[nodiscard]] std::size_t planted(ErrorKind kind) const noexcept;
    bool operator==(const GroundTruth&) const = default;
};

/// `journal_id  true_category  error_kind`; journals that behave like two
/// categories list both, separated by ';'.
std::string truth_to_tsv(const GroundTruth& truth);
/// Recorded categories are not part of the file and come back empty;
/// evaluate_detection reads them from the corpus.
GroundTruth truth_from_tsv(std::string_view text);

struct SyntheticCorpus {
    RawTables tables;
    GroundTruth truth;
};

/// Deterministic in (spec, seed).
SyntheticCorpus generate(const SyntheticSpec& spec);

/// Corpus tables, ground_truth.tsv and spec.json.
void write_synthetic(const SyntheticCorpus& corpus, const SyntheticSpec& spec,
                     const std::filesystem::path& dir);

// --- oracles --------------------------------------------------------------

/// Literal restatement of the counting rules: scans every edge and every
/// assignment with no indexes. Quadratic; meant for tests.
CitationProfile brute_force_profile(const Corpus& corpus, JournalIdx journal);

/// brute_force_profile for every journal in one edge x assignment sweep.
std::vector<CitationProfile> brute_force_profiles(const Corpus& corpus);

/// Journal-pair coupling weights by enumerating publication pairs and
/// intersecting their reference sets. Key: journal ids (lo, hi).
std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t>
brute_force_coupling(const Corpus& corpus, CouplingWeight weight);

// --- scoring --------------------------------------------------------------

struct DetectionMetrics {
    double precision = 1.0;
    double recall = 1.0;
    std::size_t flagged = 0;
    std::size_t planted = 0;
    std::size_t hits = 0;
};

/// Scores C1 flags against misassigned journals (a hit is a flag on the
/// recorded-but-false category) or C2 flags against every true-but-unrecorded
/// category, which covers both missing-assignment and misassigned journals.
/// Throws InputError when flags reference journals absent from `truth`.
DetectionMetrics evaluate_detection(std::span<const FlagRecord> flags, const Corpus& corpus,
                                    const GroundTruth& truth, Criterion kind);

}  // namespace jcaudit::synth
