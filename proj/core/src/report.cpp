#include "jcaudit/report.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "jcaudit/errors.hpp"
#include "jcaudit/format.hpp"
#include "jcaudit/tsv.hpp"

namespace jcaudit {

using nlohmann::ordered_json;
using fmt_util::decimal_ratio;

std::string_view extension(ExportFormat f) noexcept {
    return f == ExportFormat::Json ? "json" : "tsv";
}

double CorpusStats::mean_assignments(bool restricted_set) const noexcept {
    const auto& s = restricted_set ? restricted : all;
    return s.journals ? static_cast<double>(s.assignments) / static_cast<double>(s.journals) : 0.0;
}

CorpusStats corpus_stats(const Corpus& corpus, const ProfileSet& profiles, const AuditConfig& cfg) {
    CorpusStats st;
    st.all.journals = corpus.journal_count();
    st.all.categories = corpus.category_count();
    st.all.assignments = corpus.assignments().size();

    std::vector<std::uint64_t> pubs_per_journal(corpus.journal_count(), 0);
    for (std::uint32_t p = 0; p < corpus.publications().size(); ++p)
        if (corpus.in_window(PublicationIdx{p})) {
            ++st.all.publications;
            ++pubs_per_journal[corpus.publication(PublicationIdx{p}).journal.value];
        }

    std::set<CategoryIdx> restricted_cats;
    for (std::uint32_t j = 0; j < corpus.journal_count(); ++j) {
        const JournalIdx jj{j};
        const auto cats = corpus.categories_of(jj);
        st.all.max_assignments_per_journal = std::max<std::uint64_t>(st.all.max_assignments_per_journal, cats.size());
        if (profiles[jj].t < cfg.min_citations) continue;
        std::uint64_t eligible = 0;
        for (auto c : cats)
            if (eligible_for_c1(corpus.category(c), cfg)) {
                ++eligible;
                restricted_cats.insert(c);
            }
        if (eligible == 0) continue;
        ++st.restricted.journals;
        st.restricted.assignments += eligible;
        st.restricted.publications += pubs_per_journal[j];
        st.restricted.max_assignments_per_journal = std::max(st.restricted.max_assignments_per_journal, eligible);
    }
    st.restricted.categories = restricted_cats.size();
    return st;
}

std::map<std::size_t, std::size_t> assignment_distribution(const Corpus& corpus) {
    std::map<std::size_t, std::size_t> hist;
    for (std::uint32_t j = 0; j < corpus.journal_count(); ++j) ++hist[corpus.categories_of(JournalIdx{j}).size()];
    return hist;
}

ThresholdSweep threshold_sweep(const ProfileSet& profiles, const Corpus& corpus, const AuditConfig& cfg) {
    const auto stats = corpus_stats(corpus, profiles, cfg);
    std::size_t c2_base = 0;
    for (const auto& p : profiles.profiles())
        if (p.t >= cfg.min_citations) ++c2_base;

    ThresholdSweep sweep;
    for (double a : cfg.alpha_list) {
        const auto flags = criterion_one(profiles, corpus, a, cfg);
        const auto sum = journal_flag_summary(flags);
        sweep.c1.push_back(SweepRow{a, sum.journals, static_cast<std::size_t>(stats.restricted.journals),
                                    sum.assignments, static_cast<std::size_t>(stats.restricted.assignments)});
    }
    for (double b : cfg.beta_list) {
        const auto flags = criterion_two(profiles, corpus, b, cfg);
        const auto sum = journal_flag_summary(flags);
        sweep.c2.push_back(SweepRow{b, sum.journals, c2_base, 0, 0});
    }
    return sweep;
}

namespace {
__extension__ typedef unsigned __int128 u128;

std::vector<std::size_t> journals_above_cutoff(const ProfileSet& profiles, const Corpus& corpus,
                                               const AuditConfig& cfg) {
    std::vector<std::size_t> counts(corpus.category_count(), 0);
    for (std::uint32_t k = 0; k < corpus.category_count(); ++k)
        for (auto j : corpus.journals_in(CategoryIdx{k}))
            if (profiles[j].t >= cfg.min_citations) ++counts[k];
    return counts;
}

}  // namespace

std::vector<CategoryRankRow> rank_problem_categories(const ProfileSet& profiles, const Corpus& corpus, double alpha,
                                                     std::size_t min_journals, double min_fraction,
                                                     const AuditConfig& cfg) {
    const auto totals = journals_above_cutoff(profiles, corpus, cfg);
    std::vector<std::size_t> flagged(corpus.category_count(), 0);
    for (const auto& f : criterion_one(profiles, corpus, alpha, cfg)) ++flagged[f.category.value];

    std::vector<CategoryRankRow> rows;
    for (std::uint32_t k = 0; k < corpus.category_count(); ++k) {
        if (!eligible_for_c1(corpus.category(CategoryIdx{k}), cfg)) continue;
        if (totals[k] == 0 || totals[k] < min_journals) continue;
        const double share = static_cast<double>(flagged[k]) / static_cast<double>(totals[k]);
        if (share < min_fraction) continue;
        rows.push_back(CategoryRankRow{CategoryIdx{k}, totals[k], flagged[k]});
    }
    std::sort(rows.begin(), rows.end(), [](const CategoryRankRow& a, const CategoryRankRow& b) {
        const auto lhs = static_cast<u128>(a.flagged) * b.journals;
        const auto rhs = static_cast<u128>(b.flagged) * a.journals;
        if (lhs != rhs) return lhs > rhs;
        return a.category < b.category;
    });
    return rows;
}

std::vector<CategoryRankRow> rank_missing_categories(const ProfileSet& profiles, const Corpus& corpus, double beta,
                                                     std::size_t min_count, const AuditConfig& cfg) {
    const auto totals = journals_above_cutoff(profiles, corpus, cfg);
    std::vector<std::size_t> flagged(corpus.category_count(), 0);
    for (const auto& f : criterion_two(profiles, corpus, beta, cfg)) ++flagged[f.category.value];

    std::vector<CategoryRankRow> rows;
    for (std::uint32_t k = 0; k < corpus.category_count(); ++k)
        if (flagged[k] > 0 && flagged[k] >= min_count) rows.push_back(CategoryRankRow{CategoryIdx{k}, totals[k], flagged[k]});
    std::sort(rows.begin(), rows.end(), [](const CategoryRankRow& a, const CategoryRankRow& b) {
        if (a.flagged != b.flagged) return a.flagged > b.flagged;
        return a.category < b.category;
    });
    return rows;
}

DrilldownReport field_drilldown(const ProfileSet& profiles, const Corpus& corpus, CategoryIdx category, double alpha,
                                double beta, const AuditConfig& cfg) {
    DrilldownReport rep{category, alpha, beta, 0, {}, {}, {}};
    for (auto j : corpus.journals_in(category))
        if (profiles[j].t >= cfg.min_citations) ++rep.eligible_journals;

    for (const auto& f : criterion_one(profiles, corpus, alpha, cfg)) {
        if (f.category == category) rep.home_weak.push_back(f);
        else if (corpus.is_assigned(f.journal, category)) rep.other_weak.push_back(f);
    }
    for (const auto& f : criterion_two(profiles, corpus, beta, cfg)) {
        if (f.category != category) continue;
        const auto cats = corpus.categories_of(f.journal);
        rep.candidates.push_back(DrilldownCandidate{f, {cats.begin(), cats.end()}});
    }
    return rep;
}

DrilldownReport field_drilldown(const ProfileSet& profiles, const Corpus& corpus, std::string_view category_id,
                                double alpha, double beta, const AuditConfig& cfg) {
    return field_drilldown(profiles, corpus, corpus.category_index(category_id), alpha, beta, cfg);
}

// --- exports ----------------------------------------------------------------

namespace {

std::string pct6(std::uint64_t num, std::uint64_t den) { return decimal_ratio(num * 100, den, 6); }
double pct6_num(std::uint64_t num, std::uint64_t den) { return fmt_util::rounded_ratio(num * 100, den, 6); }

ordered_json counts_json(const StatCounts& c) {
    return {{"publications", c.publications},
            {"journals", c.journals},
            {"categories", c.categories},
            {"assignments", c.assignments},
            {"max_assignments_per_journal", c.max_assignments_per_journal},
            {"mean_assignments_per_journal", fmt_util::rounded_ratio(c.assignments, c.journals, 6)}};
}

std::string join_categories(const std::vector<CategoryIdx>& cats, const Corpus& corpus) {
    std::string out;
    for (auto c : cats) {
        if (!out.empty()) out += ';';
        out += corpus.category(c).id;
    }
    return out;
}

ordered_json flag_json(const FlagRecord& f, const Corpus& corpus) {
    return {{"journal_id", corpus.journal(f.journal).id},
            {"title", corpus.journal(f.journal).title},
            {"category_id", corpus.category(f.category).id},
            {"n", f.n},
            {"t", f.t},
            {"r", fmt_util::rounded_ratio(f.n, f.t, 6)}};
}

}  // namespace

std::string export_stats(const CorpusStats& s, ExportFormat f) {
    const auto& a = s.all;
    const auto& r = s.restricted;
    if (f == ExportFormat::Json) {
        ordered_json doc{{"all", counts_json(a)},
                         {"restricted", counts_json(r)},
                         {"restricted_pct",
                          {{"publications", pct6_num(r.publications, a.publications)},
                           {"journals", pct6_num(r.journals, a.journals)},
                           {"assignments", pct6_num(r.assignments, a.assignments)}}}};
        return doc.dump(2) + "\n";
    }
    std::string out;
    tsv::append_row(out, {"metric", "all", "restricted", "restricted_pct"});
    auto row = [&](std::string_view name, std::uint64_t x, std::uint64_t y, bool pct) {
        tsv::append_row(out, {name, std::to_string(x), std::to_string(y), pct ? pct6(y, x) : std::string{}});
    };
    row("publications", a.publications, r.publications, true);
    row("journals", a.journals, r.journals, true);
    row("categories", a.categories, r.categories, false);
    row("assignments", a.assignments, r.assignments, true);
    row("max_assignments_per_journal", a.max_assignments_per_journal, r.max_assignments_per_journal, false);
    tsv::append_row(out, {"mean_assignments_per_journal", decimal_ratio(a.assignments, a.journals, 6),
                          decimal_ratio(r.assignments, r.journals, 6), ""});
    return out;
}

std::string export_distribution_csv(const std::map<std::size_t, std::size_t>& hist) {
    std::string out = "assignments,journals\n";
    for (const auto& [k, v] : hist) out += fmt::format("{},{}\n", k, v);
    return out;
}

std::string export_sweep(std::span<const SweepRow> rows, Criterion criterion, ExportFormat f) {
    const bool c1 = criterion == Criterion::C1;
    const char* thr = c1 ? "alpha" : "beta";
    if (f == ExportFormat::Json) {
        auto arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json o{{thr, r.threshold},
                           {"journals", r.journals},
                           {"journal_base", r.journal_base},
                           {"journal_pct", pct6_num(r.journals, r.journal_base)}};
            if (c1) {
                o["assignments"] = r.assignments;
                o["assignment_base"] = r.assignment_base;
                o["assignment_pct"] = pct6_num(r.assignments, r.assignment_base);
            }
            arr.push_back(std::move(o));
        }
        return ordered_json{{"criterion", criterion_name(criterion)}, {"rows", std::move(arr)}}.dump(2) + "\n";
    }
    std::string out;
    if (c1)
        tsv::append_row(out, {thr, "journals", "journal_base", "journal_pct", "assignments", "assignment_base",
                              "assignment_pct"});
    else
        tsv::append_row(out, {thr, "journals", "journal_base", "journal_pct"});
    for (const auto& r : rows) {
        if (c1)
            tsv::append_row(out, {fmt_util::threshold_label(r.threshold), std::to_string(r.journals),
                                  std::to_string(r.journal_base), pct6(r.journals, r.journal_base),
                                  std::to_string(r.assignments), std::to_string(r.assignment_base),
                                  pct6(r.assignments, r.assignment_base)});
        else
            tsv::append_row(out, {fmt_util::threshold_label(r.threshold), std::to_string(r.journals),
                                  std::to_string(r.journal_base), pct6(r.journals, r.journal_base)});
    }
    return out;
}

std::string export_ranking(std::span<const CategoryRankRow> rows, const Corpus& corpus, ExportFormat f) {
    if (f == ExportFormat::Json) {
        auto arr = ordered_json::array();
        for (const auto& r : rows)
            arr.push_back({{"category_id", corpus.category(r.category).id},
                           {"label", corpus.category(r.category).label},
                           {"journals", r.journals},
                           {"flagged", r.flagged},
                           {"flagged_pct", pct6_num(r.flagged, r.journals)}});
        return arr.dump(2) + "\n";
    }
    std::string out;
    tsv::append_row(out, {"category_id", "journals", "flagged", "flagged_pct"});
    for (const auto& r : rows)
        tsv::append_row(out, {corpus.category(r.category).id, std::to_string(r.journals), std::to_string(r.flagged),
                              pct6(r.flagged, r.journals)});
    return out;
}

std::string export_drilldown(const DrilldownReport& rep, const Corpus& corpus, ExportFormat f) {
    if (f == ExportFormat::Json) {
        auto home = ordered_json::array();
        auto cand = ordered_json::array();
        auto other = ordered_json::array();
        for (const auto& x : rep.home_weak) home.push_back(flag_json(x, corpus));
        for (const auto& x : rep.candidates) {
            auto o = flag_json(x.flag, corpus);
            auto cats = ordered_json::array();
            for (auto c : x.current_categories) cats.push_back(corpus.category(c).id);
            o["current_categories"] = std::move(cats);
            cand.push_back(std::move(o));
        }
        for (const auto& x : rep.other_weak) other.push_back(flag_json(x, corpus));
        ordered_json doc{{"category_id", corpus.category(rep.category).id},
                         {"label", corpus.category(rep.category).label},
                         {"alpha", rep.alpha},
                         {"beta", rep.beta},
                         {"eligible_journals", rep.eligible_journals},
                         {"home_weak", std::move(home)},
                         {"candidates", std::move(cand)},
                         {"other_weak", std::move(other)}};
        return doc.dump(2) + "\n";
    }
    std::string out;
    tsv::append_row(out, {"section", "journal_id", "category_id", "n", "t", "r", "current_categories"});
    auto row = [&](std::string_view section, const FlagRecord& x, const std::string& current) {
        tsv::append_row(out, {section, corpus.journal(x.journal).id, corpus.category(x.category).id,
                              std::to_string(x.n), std::to_string(x.t), decimal_ratio(x.n, x.t, 6), current});
    };
    for (const auto& x : rep.home_weak) row("home_weak", x, "");
    for (const auto& x : rep.candidates) row("candidate", x.flag, join_categories(x.current_categories, corpus));
    for (const auto& x : rep.other_weak) row("other_weak", x, "");
    return out;
}

// --- human-readable ---------------------------------------------------------

std::string render_stats(const CorpusStats& s) {
    const auto& a = s.all;
    const auto& r = s.restricted;
    std::string out;
    out += fmt::format("{:<44}{:>14}{:>14}{:>8}\n", "", "all", "restricted", "%");
    auto line = [&](std::string_view name, std::uint64_t x, std::uint64_t y, bool pct) {
        out += fmt::format("{:<44}{:>14}{:>14}{:>8}\n", name, x, y, pct ? fmt_util::percent_int(y, x) : "");
    };
    line("No. of publications", a.publications, r.publications, true);
    line("No. of journals", a.journals, r.journals, true);
    line("No. of categories", a.categories, r.categories, false);
    line("No. of journal-category assignments", a.assignments, r.assignments, true);
    line("Max. no. of categories per journal", a.max_assignments_per_journal, r.max_assignments_per_journal, false);
    out += fmt::format("{:<44}{:>14}{:>14}\n", "Avg. no. of categories per journal",
                       decimal_ratio(a.assignments, a.journals, 1), decimal_ratio(r.assignments, r.journals, 1));
    return out;
}

std::string render_distribution(const std::map<std::size_t, std::size_t>& hist) {
    std::size_t total = 0;
    for (const auto& [k, v] : hist) total += v;
    std::string out = fmt::format("{:>12}{:>10}{:>8}\n", "categories", "journals", "%");
    for (const auto& [k, v] : hist) out += fmt::format("{:>12}{:>10}{:>8}\n", k, v, fmt_util::percent_int(v, total));
    return out;
}

std::string render_sweep(const ThresholdSweep& sweep) {
    std::string out = "Criterion I\n";
    out += fmt::format("{:>8}{:>22}{:>26}\n", "alpha", "journals", "assignments");
    for (const auto& r : sweep.c1)
        out += fmt::format("{:>8}{:>22}{:>26}\n", fmt_util::threshold_label(r.threshold),
                           fmt::format("{} ({})", r.journals, fmt_util::percent_int(r.journals, r.journal_base)),
                           fmt::format("{} ({})", r.assignments, fmt_util::percent_int(r.assignments, r.assignment_base)));
    out += "Criterion II\n";
    out += fmt::format("{:>8}{:>12}{:>10}\n", "beta", "journals", "%");
    for (const auto& r : sweep.c2)
        out += fmt::format("{:>8}{:>12}{:>10}\n", fmt_util::threshold_label(r.threshold), r.journals,
                           fmt_util::percent_2dp(r.journals, r.journal_base));
    return out;
}

}  // namespace jcaudit
