#include <gtest/gtest.h>

#include <numeric>

#include <json.hpp>

#include <fmt/format.h>

#include "fixtures.hpp"
#include "jcaudit/aggregate.hpp"
#include "jcaudit/errors.hpp"
#include "jcaudit/report.hpp"
#include "jcaudit/synth.hpp"

using namespace jcaudit;
using namespace jcaudit::test;

namespace {

struct Fixture {
    Corpus corpus;
    ProfileSet profiles;
    explicit Fixture(Corpus c) : corpus(std::move(c)), profiles(build_profiles(corpus)) {}
};

}  // namespace

TEST(CorpusStats, D1) {
    const Fixture f(d1());
    const auto s = corpus_stats(f.corpus, f.profiles, with_cutoff(1));
    EXPECT_EQ(s.all, (StatCounts{4, 3, 2, 3, 1}));
    EXPECT_EQ(s.restricted, (StatCounts{4, 3, 2, 3, 1}));
    EXPECT_DOUBLE_EQ(s.mean_assignments(false), 1.0);
    EXPECT_NE(render_stats(s).find("1.0"), std::string::npos);

    const auto none = corpus_stats(f.corpus, f.profiles, with_cutoff(4));
    EXPECT_EQ(none.restricted.journals, 0u);
    EXPECT_EQ(none.restricted.assignments, 0u);
    EXPECT_NE(export_stats(none, ExportFormat::Tsv).find("journals\t3\t0\t0.000000"), std::string::npos);
    EXPECT_NE(render_stats(none).find("0%"), std::string::npos);
}

TEST(CorpusStats, DoubleAssignments) {
    CorpusBuilder b;
    b.category("X").category("Y");
    for (int i = 0; i < 10; ++i) b.journal("J" + std::to_string(i), {"X", "Y"});
    const Fixture f(b.build());
    const auto s = corpus_stats(f.corpus, f.profiles, with_cutoff(0));
    EXPECT_EQ(s.all.max_assignments_per_journal, 2u);
    EXPECT_DOUBLE_EQ(s.mean_assignments(false), 2.0);
}

TEST(CorpusStats, RestrictionDropsMultidisciplinaryAssignments) {
    auto b = star("F", {"H", "MD"}, {{"H", 3}});
    b.tables().categories[1].multidisciplinary = true;  // MD
    const Fixture f(b.build());
    const auto s = corpus_stats(f.corpus, f.profiles, with_cutoff(1));
    EXPECT_EQ(s.all.assignments, 3u);
    EXPECT_EQ(s.restricted.assignments, 2u);
    EXPECT_EQ(s.restricted.journals, 2u);
}

TEST(AssignmentDistribution, Histograms) {
    EXPECT_EQ(assignment_distribution(d1()), (std::map<std::size_t, std::size_t>{{1, 3}}));

    CorpusBuilder b;
    std::vector<std::string> many;
    for (int k = 0; k < 27; ++k) {
        many.push_back("C" + std::to_string(k));
        b.category(many.back());
    }
    b.journal("WIDE", many).journal("ONE", {"C0"}).journal("NONE", {});
    const auto hist = assignment_distribution(b.build());
    EXPECT_EQ(hist, (std::map<std::size_t, std::size_t>{{0, 1}, {1, 1}, {27, 1}}));
    EXPECT_EQ(export_distribution_csv(hist), "assignments,journals\n0,1\n1,1\n27,1\n");
    std::size_t total = 0;
    for (auto [k, v] : hist) total += v;
    EXPECT_EQ(total, 3u);
}

TEST(ThresholdSweep, D1) {
    const Fixture f(d1());
    auto cfg = with_cutoff(1);
    cfg.alpha_list = {0.1};
    const auto sweep = threshold_sweep(f.profiles, f.corpus, cfg);
    ASSERT_EQ(sweep.c1.size(), 1u);
    EXPECT_EQ(sweep.c1[0].journals, 1u);
    EXPECT_EQ(sweep.c1[0].journal_base, 3u);
    EXPECT_EQ(sweep.c1[0].assignments, 1u);
    EXPECT_EQ(sweep.c1[0].assignment_base, 3u);
    EXPECT_NE(render_sweep(sweep).find("1 (33%)"), std::string::npos);
    // beta above every unassigned r: A vs Y = 2/3, B vs Y = 1/2, C vs X = 1.
    for (const auto& r : threshold_sweep(f.profiles, f.corpus, [] {
             auto c = with_cutoff(1);
             c.beta_list = {1.0, 0.7};
             return c;
         }()).c2)
        EXPECT_EQ(r.journals, 1u);
}

TEST(ThresholdSweep, GoldenD1) {
    const Fixture f(d1());
    const auto sweep = threshold_sweep(f.profiles, f.corpus, with_cutoff(1));
    EXPECT_EQ(export_sweep(sweep.c1, Criterion::C1, ExportFormat::Tsv), slurp(golden_dir() / "d1_sweep_c1.tsv"));
}

TEST(ThresholdSweep, RowsAreMonotone) {
    synth::SyntheticSpec s;
    s.planted_misassignments = 15;
    s.planted_missing = 10;
    s.seed = 77;
    const Fixture f(Corpus::from_tables(synth::generate(s).tables, YearRange{}));
    const auto sweep = threshold_sweep(f.profiles, f.corpus, with_cutoff(100));
    for (std::size_t i = 1; i < sweep.c1.size(); ++i) {
        EXPECT_GE(sweep.c1[i].journals, sweep.c1[i - 1].journals);
        EXPECT_GE(sweep.c1[i].assignments, sweep.c1[i - 1].assignments);
    }
    for (std::size_t i = 1; i < sweep.c2.size(); ++i) EXPECT_LE(sweep.c2[i].journals, sweep.c2[i - 1].journals);
    const auto j = nlohmann::json::parse(export_sweep(sweep.c2, Criterion::C2, ExportFormat::Json));
    EXPECT_EQ(j["criterion"], "C2");
    EXPECT_EQ(j["rows"].size(), 5u);
}

TEST(RankProblemCategories, NinetyPercentRow) {
    const Fixture f(ranked_category(10, 9, 4));
    const auto rows = rank_problem_categories(f.profiles, f.corpus, 0.1, 10, 0.5, with_cutoff(4));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(f.corpus.category(rows[0].category).id, "M");
    EXPECT_EQ(rows[0].journals, 10u);
    EXPECT_EQ(rows[0].flagged, 9u);
    EXPECT_NE(export_ranking(rows, f.corpus, ExportFormat::Tsv).find("M\t10\t9\t90.000000"), std::string::npos);
}

TEST(RankProblemCategories, SizeGate) {
    const Fixture f(ranked_category(9, 9, 4));
    EXPECT_TRUE(rank_problem_categories(f.profiles, f.corpus, 0.1, 10, 0.0, with_cutoff(4)).empty());
}

TEST(RankProblemCategories, OrderingByShareThenId) {
    CorpusBuilder b;
    b.category("A").category("B").category("Z").journal("HUB", {"Z"}).pub("h", "HUB");
    // A: 1 of 3 weak (A1 is cited by A3); B and Z (the hub) fully weak, tied.
    for (const char* j : {"A1", "A2", "B1", "B2"})
        b.journal(j, {std::string(1, j[0])}).pub(std::string(j) + "p", j).cite(std::string(j) + "p", "h");
    b.journal("A3", {"A"}).pub("A3p", "A3").cite("A3p", "A1p");
    const Fixture f(b.build());
    const auto rows = rank_problem_categories(f.profiles, f.corpus, 0.1, 1, 0.3, with_cutoff(1));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(f.corpus.category(rows[0].category).id, "B");
    EXPECT_EQ(f.corpus.category(rows[1].category).id, "Z");
    EXPECT_EQ(f.corpus.category(rows[2].category).id, "A");
    EXPECT_EQ(rows[2].flagged, 1u);
}

TEST(RankMissingCategories, CountsAndTies) {
    CorpusBuilder b;
    b.category("T").category("U").category("H");
    b.journal("T0", {"T"}).pub("t0", "T0").journal("U0", {"U"}).pub("u0", "U0");
    for (int i = 0; i < 15; ++i) {
        const auto j = "J" + std::to_string(i), p = "p" + std::to_string(i);
        b.journal(j, {"H"}).pub(p, j).cite(p, "t0", 9).cite(p, "u0", 1);
    }
    const Fixture f(b.build());
    auto rows = rank_missing_categories(f.profiles, f.corpus, 0.6, 10, with_cutoff(1));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(f.corpus.category(rows[0].category).id, "T");
    EXPECT_EQ(rows[0].flagged, 15u);
    EXPECT_TRUE(rank_missing_categories(f.profiles, f.corpus, 0.6, 16, with_cutoff(1)).empty());

    rows = rank_missing_categories(f.profiles, f.corpus, 0.1, 10, with_cutoff(1));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].flagged, rows[1].flagged);
    EXPECT_EQ(f.corpus.category(rows[0].category).id, "T");
    EXPECT_EQ(f.corpus.category(rows[1].category).id, "U");
}

TEST(FieldDrilldown, D1) {
    const Fixture f(d1());
    const auto rep = field_drilldown(f.profiles, f.corpus, "Y", 0.1, 0.6, with_cutoff(1));
    ASSERT_EQ(rep.home_weak.size(), 1u);
    EXPECT_EQ(f.corpus.journal(rep.home_weak[0].journal).id, "C");
    EXPECT_EQ(rep.home_weak[0].n, 0u);
    ASSERT_EQ(rep.candidates.size(), 1u);
    EXPECT_EQ(f.corpus.journal(rep.candidates[0].flag.journal).id, "A");
    EXPECT_TRUE(rep.other_weak.empty());
    EXPECT_EQ(export_drilldown(rep, f.corpus, ExportFormat::Tsv),
              "section\tjournal_id\tcategory_id\tn\tt\tr\tcurrent_categories\n"
              "home_weak\tC\tY\t0\t3\t0.000000\t\n"
              "candidate\tA\tY\t2\t3\t0.666667\tX\n");
    EXPECT_THROW(field_drilldown(f.profiles, f.corpus, "Q", 0.1, 0.6, with_cutoff(1)), UnknownKeyError);
}

TEST(FieldDrilldown, CandidatesListCurrentCategories) {
    const Fixture f(d1());
    const auto rep = field_drilldown(f.profiles, f.corpus, "X", 0.1, 0.6, with_cutoff(1));
    ASSERT_EQ(rep.candidates.size(), 1u);
    EXPECT_EQ(f.corpus.journal(rep.candidates[0].flag.journal).id, "C");
    EXPECT_EQ(rep.candidates[0].current_categories, (std::vector<CategoryIdx>{f.corpus.category_index("Y")}));
    const auto j = nlohmann::json::parse(export_drilldown(rep, f.corpus, ExportFormat::Json));
    EXPECT_EQ(j["candidates"][0]["current_categories"][0], "Y");
}

TEST(FieldDrilldown, EmptyCategory) {
    auto b = CorpusBuilder{};
    b.category("E").category("X").journal("A", {"X"});
    const Fixture f(b.build());
    const auto rep = field_drilldown(f.profiles, f.corpus, "E", 0.1, 0.6, with_cutoff(0));
    EXPECT_EQ(rep.eligible_journals, 0u);
    EXPECT_TRUE(rep.home_weak.empty() && rep.candidates.empty() && rep.other_weak.empty());
}

TEST(FieldDrilldown, HomeAndOtherWeak) {
    // r_home = 8/100, r_other = 9/100.
    const Fixture f(star("F", {"H", "K"}, {{"H", 8}, {"K", 9}, {"O", 83}}).build());
    const auto rep = field_drilldown(f.profiles, f.corpus, "H", 0.1, 0.6, with_cutoff(100));
    ASSERT_EQ(rep.home_weak.size(), 1u);
    ASSERT_EQ(rep.other_weak.size(), 1u);
    EXPECT_EQ(rep.home_weak[0].journal, rep.other_weak[0].journal);
    EXPECT_EQ(f.corpus.category(rep.other_weak[0].category).id, "K");
    EXPECT_EQ(rep.candidates.size(), 0u);
}

TEST(FieldDrilldown, HomeSectionEqualsFilteredCriterionOne) {
    synth::SyntheticSpec s;
    s.planted_misassignments = 20;
    s.seed = 9;
    const Fixture f(Corpus::from_tables(synth::generate(s).tables, YearRange{}));
    const auto cfg = with_cutoff(100);
    const auto all = criterion_one(f.profiles, f.corpus, 0.2, cfg);
    for (std::uint32_t k = 0; k < f.corpus.category_count(); ++k) {
        std::vector<FlagRecord> expected;
        for (const auto& r : all)
            if (r.category == CategoryIdx{k}) expected.push_back(r);
        EXPECT_EQ(field_drilldown(f.profiles, f.corpus, CategoryIdx{k}, 0.2, 0.6, cfg).home_weak, expected);
    }
}

TEST(Exports, ByteStableAndJsonParses) {
    const Fixture f(d1());
    const auto cfg = with_cutoff(1);
    const auto s1 = corpus_stats(f.corpus, f.profiles, cfg);
    const auto again = build_profiles(f.corpus, 4);
    EXPECT_EQ(export_stats(s1, ExportFormat::Tsv), export_stats(corpus_stats(f.corpus, again, cfg), ExportFormat::Tsv));
    const auto j = nlohmann::json::parse(export_stats(s1, ExportFormat::Json));
    EXPECT_EQ(j["all"]["journals"], 3);
    EXPECT_EQ(j["restricted_pct"]["journals"], 100.0);
    const auto r = nlohmann::json::parse(
        export_ranking(rank_problem_categories(f.profiles, f.corpus, 0.1, 1, 0.5, cfg), f.corpus, ExportFormat::Json));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0]["category_id"], "Y");
    EXPECT_EQ(extension(ExportFormat::Json), "json");
}
