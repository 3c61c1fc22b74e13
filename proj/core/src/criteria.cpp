#include "jcaudit/criteria.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "jcaudit/errors.hpp"
#include "jcaudit/format.hpp"
#include "jcaudit/tsv.hpp"

namespace jcaudit {

double relatedness(std::uint64_t n, std::uint64_t t) {
    if (t == 0) return 0.0;
    if (n > t) throw Error(fmt::format("relatedness: n = {} exceeds t = {}", n, t));
    return static_cast<double>(n) / static_cast<double>(t);
}

std::string_view criterion_name(Criterion c) noexcept {
    return c == Criterion::C1 ? "C1" : "C2";
}

bool eligible_for_c1(const Category& c, const AuditConfig& cfg) noexcept {
    return !(c.multidisciplinary && cfg.exclude_multidisciplinary_from_c1);
}

bool eligible_for_c2(const Category& c, const AuditConfig& cfg) noexcept {
    return !(c.multidisciplinary && cfg.exclude_multidisciplinary_from_c2);
}

namespace {

// Criterion II hits of one journal, in category order.
std::vector<CategoryScore> unassigned_strong(const CitationProfile& p, const Corpus& corpus, double beta,
                                             const AuditConfig& cfg) {
    std::vector<CategoryScore> out;
    auto consider = [&](CategoryIdx cat, std::uint64_t n) {
        if (corpus.is_assigned(p.journal, cat) || !eligible_for_c2(corpus.category(cat), cfg)) return;
        const double r = relatedness(n, p.t);
        if (r >= beta) out.push_back(CategoryScore{cat, n, r});
    };
    if (beta > 0.0) {
        // r >= beta > 0 needs n > 0, so the sparse entries suffice.
        for (const auto& [cat, n] : p.per_category) consider(cat, n);
    } else {
        for (std::uint32_t k = 0; k < corpus.category_count(); ++k) consider(CategoryIdx{k}, p.n(CategoryIdx{k}));
    }
    return out;
}

}  // namespace

std::vector<FlagRecord> criterion_one(const ProfileSet& profiles, const Corpus& corpus, double alpha,
                                      const AuditConfig& cfg) {
    std::vector<FlagRecord> out;
    for (const auto& p : profiles.profiles()) {
        if (p.t < cfg.min_citations) continue;
        for (auto cat : corpus.categories_of(p.journal)) {
            if (!eligible_for_c1(corpus.category(cat), cfg)) continue;
            const auto n = p.n(cat);
            const double r = relatedness(n, p.t);
            if (r <= alpha) out.push_back(FlagRecord{p.journal, cat, r, n, p.t, Criterion::C1, true});
        }
    }
    return out;
}

std::vector<FlagRecord> criterion_two(const ProfileSet& profiles, const Corpus& corpus, double beta,
                                      const AuditConfig& cfg) {
    std::vector<FlagRecord> out;
    for (const auto& p : profiles.profiles()) {
        if (p.t < cfg.min_citations) continue;
        for (const auto& s : unassigned_strong(p, corpus, beta, cfg))
            out.push_back(FlagRecord{p.journal, s.category, s.relatedness, s.n, p.t, Criterion::C2, false});
    }
    return out;
}

std::vector<CombinedRecord> combined(const ProfileSet& profiles, const Corpus& corpus, double alpha, double beta,
                                     const AuditConfig& cfg) {
    if (!(alpha < beta))
        throw InputError(fmt::format("combined criterion needs alpha < beta (got {} and {})", alpha, beta));
    std::vector<CombinedRecord> out;
    for (const auto& p : profiles.profiles()) {
        if (p.t < cfg.min_citations) continue;
        CombinedRecord rec{p.journal, p.t, {}, {}};
        bool all_weak = true;
        for (auto cat : corpus.categories_of(p.journal)) {
            if (!eligible_for_c1(corpus.category(cat), cfg)) continue;
            const auto n = p.n(cat);
            const double r = relatedness(n, p.t);
            if (r > alpha) {
                all_weak = false;
                break;
            }
            rec.c1_part.push_back(CategoryScore{cat, n, r});
        }
        if (!all_weak || rec.c1_part.empty()) continue;
        rec.c2_part = unassigned_strong(p, corpus, beta, cfg);
        if (!rec.c2_part.empty()) out.push_back(std::move(rec));
    }
    return out;
}

FlagSummary journal_flag_summary(std::span<const FlagRecord> flags) {
    std::set<JournalIdx> journals;
    for (const auto& f : flags) journals.insert(f.journal);
    return FlagSummary{journals.size(), flags.size()};
}

std::string flags_to_tsv(std::span<const FlagRecord> flags, const Corpus& corpus) {
    std::string out;
    tsv::append_row(out, {"journal_id", "category_id", "n", "t", "r", "assigned"});
    for (const auto& f : flags)
        tsv::append_row(out, {corpus.journal(f.journal).id, corpus.category(f.category).id, std::to_string(f.n),
                              std::to_string(f.t), fmt_util::decimal_ratio(f.n, f.t, 6), f.assigned ? "1" : "0"});
    return out;
}

namespace {

nlohmann::ordered_json score_json(const CategoryScore& s, std::uint64_t t, const Corpus& corpus) {
    return {{"category_id", corpus.category(s.category).id}, {"n", s.n}, {"r", fmt_util::rounded_ratio(s.n, t, 6)}};
}

std::string score_list(const std::vector<CategoryScore>& scores, std::uint64_t t, const Corpus& corpus) {
    std::string out;
    for (const auto& s : scores) {
        if (!out.empty()) out += ';';
        out += corpus.category(s.category).id + ":" + fmt_util::decimal_ratio(s.n, t, 6);
    }
    return out;
}

}  // namespace

std::string flags_to_json(std::span<const FlagRecord> flags, const Corpus& corpus) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& f : flags)
        arr.push_back({{"journal_id", corpus.journal(f.journal).id},
                       {"category_id", corpus.category(f.category).id},
                       {"criterion", criterion_name(f.criterion)},
                       {"n", f.n},
                       {"t", f.t},
                       {"r", fmt_util::rounded_ratio(f.n, f.t, 6)},
                       {"assigned", f.assigned}});
    return arr.dump(2) + "\n";
}

std::string combined_to_tsv(std::span<const CombinedRecord> records, const Corpus& corpus) {
    std::string out;
    tsv::append_row(out, {"journal_id", "t", "assigned_categories", "suggested_categories"});
    for (const auto& r : records)
        tsv::append_row(out, {corpus.journal(r.journal).id, std::to_string(r.t), score_list(r.c1_part, r.t, corpus),
                              score_list(r.c2_part, r.t, corpus)});
    return out;
}

std::string combined_to_json(std::span<const CombinedRecord> records, const Corpus& corpus) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        auto c1 = nlohmann::ordered_json::array();
        auto c2 = nlohmann::ordered_json::array();
        for (const auto& s : r.c1_part) c1.push_back(score_json(s, r.t, corpus));
        for (const auto& s : r.c2_part) c2.push_back(score_json(s, r.t, corpus));
        arr.push_back({{"journal_id", corpus.journal(r.journal).id},
                       {"title", corpus.journal(r.journal).title},
                       {"t", r.t},
                       {"assigned", std::move(c1)},
                       {"suggested", std::move(c2)}});
    }
    return arr.dump(2) + "\n";
}

}  // namespace jcaudit
