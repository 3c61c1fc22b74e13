#include "jcaudit/aggregate.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

#include "jcaudit/errors.hpp"
#include "jcaudit/tsv.hpp"
#include "parallel.hpp"

namespace jcaudit {

namespace {

using PairCounts = std::unordered_map<std::uint64_t, std::uint64_t>;

constexpr std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) noexcept {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

ProfileSet build_profiles(const Corpus& corpus, unsigned threads) {
    const auto edges = corpus.edges();
    const auto pubs = corpus.publications();
    const std::size_t nj = corpus.journal_count();
    const std::size_t nc = corpus.category_count();
    const YearRange window = corpus.window();

    // Phase 1: undirected journal-pair multiplicities, one map per shard.
    const unsigned shards = detail::effective_threads(threads, edges.size());
    std::vector<PairCounts> local(shards);
    std::vector<EdgeTally> tallies(shards);
    detail::for_each_chunk(edges.size(), shards, [&](unsigned k, std::size_t begin, std::size_t end) {
        auto& counts = local[k];
        auto& tally = tallies[k];
        for (std::size_t i = begin; i < end; ++i) {
            const auto& citing = pubs[edges[i].citing.value];
            const auto& cited = pubs[edges[i].cited.value];
            if (!window.contains(citing.year) || !window.contains(cited.year)) {
                ++tally.out_of_window;
                continue;
            }
            if (citing.journal == cited.journal) {
                ++tally.self_citations;
                continue;
            }
            ++tally.consumed;
            ++counts[pair_key(citing.journal.value, cited.journal.value)];
        }
    });

    EdgeTally tally;
    for (const auto& t : tallies) {
        tally.consumed += t.consumed;
        tally.self_citations += t.self_citations;
        tally.out_of_window += t.out_of_window;
    }
    PairCounts merged = std::move(local[0]);
    for (unsigned k = 1; k < shards; ++k)
        for (const auto& [key, w] : local[k]) merged[key] += w;

    // Phase 2: CSR neighbour lists (journal, weight) in both directions.
    std::vector<std::size_t> offsets(nj + 1, 0);
    for (const auto& [key, w] : merged) {
        ++offsets[(key >> 32) + 1];
        ++offsets[(key & 0xffffffffu) + 1];
    }
    for (std::size_t j = 0; j < nj; ++j) offsets[j + 1] += offsets[j];
    std::vector<std::pair<std::uint32_t, std::uint64_t>> neighbours(offsets[nj]);
    {
        auto fill = offsets;
        for (const auto& [key, w] : merged) {
            const auto a = static_cast<std::uint32_t>(key >> 32);
            const auto b = static_cast<std::uint32_t>(key & 0xffffffffu);
            neighbours[fill[a]++] = {b, w};
            neighbours[fill[b]++] = {a, w};
        }
    }

    // Phase 3: expand neighbours through their category assignments.
    std::vector<CitationProfile> profiles(nj);
    const unsigned workers = detail::effective_threads(threads, nj);
    detail::for_each_chunk(nj, workers, [&](unsigned, std::size_t begin, std::size_t end) {
        std::vector<std::uint64_t> scratch(nc, 0);
        std::vector<std::uint32_t> touched;
        for (std::size_t j = begin; j < end; ++j) {
            auto& prof = profiles[j];
            prof.journal = JournalIdx{static_cast<std::uint32_t>(j)};
            for (std::size_t e = offsets[j]; e < offsets[j + 1]; ++e) {
                const auto [other, w] = neighbours[e];
                prof.t += w;
                for (auto cat : corpus.categories_of(JournalIdx{other})) {
                    if (scratch[cat.value] == 0) touched.push_back(cat.value);
                    scratch[cat.value] += w;
                }
            }
            std::sort(touched.begin(), touched.end());
            prof.per_category.reserve(touched.size());
            for (auto cat : touched) {
                prof.per_category.emplace_back(CategoryIdx{cat}, scratch[cat]);
                scratch[cat] = 0;
            }
            touched.clear();
        }
    });

    return ProfileSet(std::move(profiles), window, tally);
}

const CitationProfile& profile_of(const ProfileSet& profiles, const Corpus& corpus, std::string_view journal_id) {
    return profiles[corpus.journal_index(journal_id)];
}

std::string profiles_to_tsv(const ProfileSet& profiles, const Corpus& corpus) {
    std::string out;
    tsv::append_row(out, {"journal_id", "t", "category_id", "n"});
    // Journal and category handles are already in id order.
    for (const auto& p : profiles.profiles()) {
        const auto& jid = corpus.journal(p.journal).id;
        const auto t = std::to_string(p.t);
        for (const auto& [cat, n] : p.per_category)
            if (n) tsv::append_row(out, {jid, t, corpus.category(cat).id, std::to_string(n)});
    }
    return out;
}

}  // namespace jcaudit
