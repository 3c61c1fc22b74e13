#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jcaudit/corpus.hpp"
#include "jcaudit/types.hpp"

namespace jcaudit {

/// Citation totals of one journal. `t` counts every non-self, in-window
/// citation in either direction; `per_category[c]` counts those whose
/// other endpoint is a journal assigned to c.
struct CitationProfile {
    JournalIdx journal;
    std::uint64_t t = 0;
    CategoryCounts per_category;

    [[nodiscard]] std::uint64_t n(CategoryIdx c) const noexcept { return count_for(per_category, c); }
    bool operator==(const CitationProfile&) const = default;
};

struct EdgeTally {
    std::uint64_t consumed = 0;
    std::uint64_t self_citations = 0;
    std::uint64_t out_of_window = 0;
    bool operator==(const EdgeTally&) const = default;
};

class ProfileSet {
public:
    ProfileSet(std::vector<CitationProfile> profiles, YearRange window, EdgeTally tally)
        : profiles_(std::move(profiles)), window_(window), tally_(tally) {}

    [[nodiscard]] const CitationProfile& operator[](JournalIdx j) const { return profiles_.at(j.value); }
    [[nodiscard]] std::span<const CitationProfile> profiles() const noexcept { return profiles_; }
    [[nodiscard]] std::size_t size() const noexcept { return profiles_.size(); }
    [[nodiscard]] YearRange window() const noexcept { return window_; }
    [[nodiscard]] const EdgeTally& tally() const noexcept { return tally_; }

    bool operator==(const ProfileSet&) const = default;

private:
    std::vector<CitationProfile> profiles_;
    YearRange window_;
    EdgeTally tally_;
};

/// Aggregates edges into one profile per journal using the corpus window.
/// Edges are sharded over `threads` workers; the merge is exact, so the
/// result does not depend on the thread count.
ProfileSet build_profiles(const Corpus& corpus, unsigned threads = 1);

/// Throws UnknownKeyError for an id not in the corpus.
const CitationProfile& profile_of(const ProfileSet& profiles, const Corpus& corpus,
                                  std::string_view journal_id);

/// `journal_id<TAB>t<TAB>category_id<TAB>n`, one row per nonzero pair.
std::string profiles_to_tsv(const ProfileSet& profiles, const Corpus& corpus);

}  // namespace jcaudit
