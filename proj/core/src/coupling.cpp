#include "jcaudit/coupling.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>
#include <json.hpp>

#include "jcaudit/criteria.hpp"
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

void merge_into(PairCounts& dst, const PairCounts& src) {
    for (const auto& [k, w] : src) dst[k] += w;
}

}  // namespace

std::uint64_t CouplingSet::journal_weight(JournalIdx i, JournalIdx j) const {
    if (i == j) return 0;
    auto it = journal_weights_.find(pair_key(i.value, j.value));
    return it == journal_weights_.end() ? 0 : it->second;
}

CouplingSet build_coupling_profiles(const Corpus& corpus, CouplingWeight weight, unsigned threads) {
    if (!corpus.has_references()) throw MissingReferencesError();

    const std::size_t np = corpus.publications().size();
    const std::size_t nk = corpus.ref_keys().size();
    const std::size_t nj = corpus.journal_count();
    const std::size_t nc = corpus.category_count();

    // Inverted index: ref key -> distinct in-window publications, ascending.
    std::vector<std::vector<std::uint32_t>> citing(nk);
    for (const auto& r : corpus.references())
        if (corpus.in_window(r.publication)) citing[r.key.value].push_back(r.publication.value);
    for (auto& list : citing) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    auto journal_of = [&](std::uint32_t p) { return corpus.publications()[p].journal.value; };

    PairCounts weights;
    if (weight == CouplingWeight::SharedReferences) {
        // Sum over keys of m_i(k) * m_j(k), m = publications of a journal citing k.
        const unsigned shards = detail::effective_threads(threads, nk);
        std::vector<PairCounts> local(shards);
        detail::for_each_chunk(nk, shards, [&](unsigned s, std::size_t begin, std::size_t end) {
            std::vector<std::pair<std::uint32_t, std::uint64_t>> per_journal;
            for (std::size_t k = begin; k < end; ++k) {
                if (citing[k].size() < 2) continue;
                per_journal.clear();
                for (auto p : citing[k]) per_journal.emplace_back(journal_of(p), 1);
                std::sort(per_journal.begin(), per_journal.end());
                std::size_t w = 0;
                for (std::size_t r = 0; r < per_journal.size(); ++r) {
                    if (w > 0 && per_journal[w - 1].first == per_journal[r].first) ++per_journal[w - 1].second;
                    else per_journal[w++] = per_journal[r];
                }
                per_journal.resize(w);
                for (std::size_t a = 0; a < w; ++a)
                    for (std::size_t b = a + 1; b < w; ++b)
                        local[s][pair_key(per_journal[a].first, per_journal[b].first)] +=
                            per_journal[a].second * per_journal[b].second;
            }
        });
        weights = std::move(local[0]);
        for (unsigned s = 1; s < shards; ++s) merge_into(weights, local[s]);
    } else {
        // One unit per coupled publication pair (p < q).
        std::vector<std::vector<std::uint32_t>> keys_of(np);
        for (std::size_t k = 0; k < nk; ++k)
            for (auto p : citing[k]) keys_of[p].push_back(static_cast<std::uint32_t>(k));
        const unsigned shards = detail::effective_threads(threads, np);
        std::vector<PairCounts> local(shards);
        detail::for_each_chunk(np, shards, [&](unsigned s, std::size_t begin, std::size_t end) {
            constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
            std::vector<std::uint32_t> marker(np, kNone);
            for (std::size_t p = begin; p < end; ++p) {
                const auto jp = journal_of(static_cast<std::uint32_t>(p));
                for (auto k : keys_of[p])
                    for (auto q : citing[k]) {
                        if (q <= p || marker[q] == p) continue;
                        marker[q] = static_cast<std::uint32_t>(p);
                        const auto jq = journal_of(q);
                        if (jq != jp) ++local[s][pair_key(jp, jq)];
                    }
            }
        });
        weights = std::move(local[0]);
        for (unsigned s = 1; s < shards; ++s) merge_into(weights, local[s]);
    }

    // Journal-level weights -> per-category weights.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> adj(nj);
    for (const auto& [key, w] : weights) {
        const auto a = static_cast<std::uint32_t>(key >> 32);
        const auto b = static_cast<std::uint32_t>(key & 0xffffffffu);
        adj[a].emplace_back(b, w);
        adj[b].emplace_back(a, w);
    }
    std::vector<CouplingProfile> profiles(nj);
    std::vector<std::uint64_t> scratch(nc, 0);
    for (std::size_t j = 0; j < nj; ++j) {
        profiles[j].journal = JournalIdx{static_cast<std::uint32_t>(j)};
        for (const auto& [other, w] : adj[j])
            for (auto cat : corpus.categories_of(JournalIdx{other})) scratch[cat.value] += w;
        for (std::uint32_t k = 0; k < nc; ++k)
            if (scratch[k]) {
                profiles[j].per_category.emplace_back(CategoryIdx{k}, scratch[k]);
                scratch[k] = 0;
            }
    }
    return CouplingSet(std::move(profiles), std::move(weights));
}

std::optional<CategoryIdx> strongest_category(const CategoryCounts& counts, const Corpus& corpus,
                                              bool exclude_multidisciplinary) {
    std::optional<CategoryIdx> best;
    std::uint64_t best_w = 0;
    // Entries are in id order, so strict '>' keeps the smallest id on ties.
    for (const auto& [cat, w] : counts) {
        if (exclude_multidisciplinary && corpus.category(cat).multidisciplinary) continue;
        if (w > best_w) {
            best_w = w;
            best = cat;
        }
    }
    return best;
}

double RelationKindComparison::agreement_rate() const noexcept {
    if (rows.empty()) return 1.0;
    const auto agreeing = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.agree; });
    return static_cast<double>(agreeing) / static_cast<double>(rows.size());
}

RelationKindComparison compare_relation_kinds(const Corpus& corpus, const ProfileSet& profiles,
                                              const CouplingSet& coupling, CategoryIdx category,
                                              const AuditConfig& cfg) {
    RelationKindComparison cmp{category, {}, 0, 0};
    const bool exclude = cfg.exclude_multidisciplinary_from_c1;
    for (auto j : corpus.journals_in(category)) {
        if (profiles[j].t < cfg.min_citations) continue;
        RelationKindRow row{j, strongest_category(profiles[j].per_category, corpus, exclude),
                            strongest_category(coupling[j].per_category, corpus, exclude), false};
        row.agree = row.strongest_direct == row.strongest_coupling;
        if (row.strongest_direct == category) ++cmp.home_strongest_direct;
        if (row.strongest_coupling == category) ++cmp.home_strongest_coupling;
        cmp.rows.push_back(row);
    }
    return cmp;
}

RelationKindComparison compare_relation_kinds(const Corpus& corpus, std::string_view category_id,
                                              const AuditConfig& cfg, unsigned threads) {
    const auto category = corpus.category_index(category_id);
    const auto profiles = build_profiles(corpus, threads);
    const auto coupling = build_coupling_profiles(corpus, cfg.coupling_weight, threads);
    return compare_relation_kinds(corpus, profiles, coupling, category, cfg);
}

namespace {

std::string id_or_empty(const std::optional<CategoryIdx>& c, const Corpus& corpus) {
    return c ? corpus.category(*c).id : std::string{};
}

}  // namespace

std::string comparison_to_tsv(const RelationKindComparison& cmp, const Corpus& corpus) {
    std::string out;
    tsv::append_row(out, {"journal_id", "strongest_direct", "strongest_coupling", "agree"});
    for (const auto& r : cmp.rows)
        tsv::append_row(out, {corpus.journal(r.journal).id, id_or_empty(r.strongest_direct, corpus),
                              id_or_empty(r.strongest_coupling, corpus), r.agree ? "1" : "0"});
    return out;
}

std::string comparison_to_json(const RelationKindComparison& cmp, const Corpus& corpus) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : cmp.rows)
        rows.push_back({{"journal_id", corpus.journal(r.journal).id},
                        {"strongest_direct", id_or_empty(r.strongest_direct, corpus)},
                        {"strongest_coupling", id_or_empty(r.strongest_coupling, corpus)},
                        {"agree", r.agree}});
    nlohmann::ordered_json doc{{"category_id", corpus.category(cmp.category).id},
                               {"journals", cmp.rows.size()},
                               {"home_strongest_direct", cmp.home_strongest_direct},
                               {"home_strongest_coupling", cmp.home_strongest_coupling},
                               {"agreement_rate", cmp.agreement_rate()},
                               {"rows", std::move(rows)}};
    return doc.dump(2) + "\n";
}

}  // namespace jcaudit
