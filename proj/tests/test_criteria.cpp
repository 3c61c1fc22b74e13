#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <json.hpp>

#include "fixtures.hpp"
#include "jcaudit/aggregate.hpp"
#include "jcaudit/criteria.hpp"
#include "jcaudit/errors.hpp"
#include "jcaudit/synth.hpp"

using namespace jcaudit;
using namespace jcaudit::test;

namespace {

using Key = std::pair<std::uint32_t, std::uint32_t>;

std::set<Key> keys(const std::vector<FlagRecord>& flags) {
    std::set<Key> out;
    for (const auto& f : flags) out.emplace(f.journal.value, f.category.value);
    return out;
}

std::set<std::uint32_t> combined_journals(const std::vector<CombinedRecord>& recs) {
    std::set<std::uint32_t> out;
    for (const auto& r : recs) out.insert(r.journal.value);
    return out;
}

bool subset(const std::set<Key>& a, const std::set<Key>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

struct Fixture {
    Corpus corpus;
    ProfileSet profiles;
    explicit Fixture(Corpus c) : corpus(std::move(c)), profiles(build_profiles(corpus)) {}
    JournalIdx j(const char* id) const { return corpus.journal_index(id); }
    CategoryIdx c(const char* id) const { return corpus.category_index(id); }
};

}  // namespace

TEST(Relatedness, Values) {
    EXPECT_DOUBLE_EQ(relatedness(1, 3), 1.0 / 3.0);
    EXPECT_EQ(relatedness(0, 5), 0.0);
    EXPECT_EQ(relatedness(3, 3), 1.0);
    EXPECT_EQ(relatedness(0, 0), 0.0);
    EXPECT_THROW(relatedness(4, 3), Error);
}

TEST(CriterionOne, D1) {
    const Fixture f(d1());
    const auto flags = criterion_one(f.profiles, f.corpus, 0.1, with_cutoff(1));
    ASSERT_EQ(flags.size(), 1u);
    EXPECT_EQ(flags[0], (FlagRecord{f.j("C"), f.c("Y"), 0.0, 0, 3, Criterion::C1, true}));
    EXPECT_EQ(journal_flag_summary(flags), (FlagSummary{1, 1}));
}

TEST(CriterionOne, InclusiveBoundary) {
    // r = 1/10 and r = 3/10 exactly, against thresholds parsed from text.
    for (auto [n, alpha_text] : {std::pair{1u, "0.1"}, std::pair{3u, "0.3"}, std::pair{1u, "0.1,0.2"}}) {
        const Fixture f(star("F", {"H"}, {{"H", n}, {"O", 10 - n}}).build());
        const double alpha = parse_threshold_list(alpha_text).front();
        const auto flags = criterion_one(f.profiles, f.corpus, alpha, with_cutoff(1));
        ASSERT_TRUE(std::any_of(flags.begin(), flags.end(), [&](const FlagRecord& r) { return r.journal == f.j("F"); }))
            << n << " of 10 at alpha " << alpha_text;
        const auto below = criterion_one(f.profiles, f.corpus, std::nextafter(alpha, 0.0), with_cutoff(1));
        EXPECT_FALSE(std::any_of(below.begin(), below.end(), [&](const FlagRecord& r) { return r.journal == f.j("F"); }));
    }
}

TEST(CriterionOne, CutoffPrecedesTest) {
    const Fixture f(star("F", {"H"}, {{"O", 10}}).build());
    EXPECT_EQ(criterion_one(f.profiles, f.corpus, 0.1, with_cutoff(11)).size(), 0u);
    EXPECT_EQ(keys(criterion_one(f.profiles, f.corpus, 0.1, with_cutoff(10))).count({f.j("F").value, f.c("H").value}), 1u);
}

TEST(CriterionOne, MultidisciplinarySwitch) {
    auto b = star("F", {"H"}, {{"O", 10}});
    b.tables().categories[0].multidisciplinary = true;  // H
    const Fixture f(b.build());
    const Key fh{f.j("F").value, f.c("H").value};
    auto cfg = with_cutoff(1);
    EXPECT_EQ(keys(criterion_one(f.profiles, f.corpus, 0.1, cfg)).count(fh), 0u);
    cfg.exclude_multidisciplinary_from_c1 = false;
    EXPECT_EQ(keys(criterion_one(f.profiles, f.corpus, 0.1, cfg)).count(fh), 1u);
}

TEST(CriterionTwo, D1) {
    const Fixture f(d1());
    const auto flags = criterion_two(f.profiles, f.corpus, 0.6, with_cutoff(1));
    // A relates to Y at 2/3 and C to X at 3/3.
    ASSERT_EQ(flags.size(), 2u);
    EXPECT_EQ(flags[0], (FlagRecord{f.j("A"), f.c("Y"), 2.0 / 3.0, 2, 3, Criterion::C2, false}));
    EXPECT_EQ(flags[1], (FlagRecord{f.j("C"), f.c("X"), 1.0, 3, 3, Criterion::C2, false}));
}

TEST(CriterionTwo, InclusiveBoundary) {
    const Fixture f(star("F", {"H"}, {{"H", 4}, {"O", 6}}).build());
    const auto at = criterion_two(f.profiles, f.corpus, parse_threshold_list("0.6").front(), with_cutoff(1));
    EXPECT_EQ(keys(at).count({f.j("F").value, f.c("O").value}), 1u);
    const auto above = criterion_two(f.profiles, f.corpus, std::nextafter(0.6, 1.0), with_cutoff(1));
    EXPECT_EQ(keys(above).count({f.j("F").value, f.c("O").value}), 0u);
}

TEST(CriterionTwo, ThresholdAboveMaximum) {
    const Fixture f(star("F", {"H"}, {{"H", 2}, {"O", 8}}).build());
    auto flags = criterion_two(f.profiles, f.corpus, 0.9, with_cutoff(1));
    std::erase_if(flags, [&](const FlagRecord& r) { return r.journal != f.j("F"); });
    EXPECT_TRUE(flags.empty());
}

TEST(CriterionTwo, MultidisciplinaryIncludedByDefault) {
    auto b = star("F", {"H"}, {{"O", 10}});
    b.tables().categories[1].multidisciplinary = true;  // O
    const Fixture f(b.build());
    auto cfg = with_cutoff(1);
    EXPECT_EQ(keys(criterion_two(f.profiles, f.corpus, 0.9, cfg)).count({f.j("F").value, f.c("O").value}), 1u);
    cfg.exclude_multidisciplinary_from_c2 = true;
    EXPECT_EQ(keys(criterion_two(f.profiles, f.corpus, 0.9, cfg)).count({f.j("F").value, f.c("O").value}), 0u);
}

TEST(CriterionTwo, ZeroBetaCoversEveryUnassignedCategory) {
    const Fixture f(d1());
    const auto flags = criterion_two(f.profiles, f.corpus, 0.0, with_cutoff(1));
    // A: Y, B: Y, C: X.
    EXPECT_EQ(flags.size(), 3u);
}

TEST(Combined, D1) {
    const Fixture f(d1());
    const auto recs = combined(f.profiles, f.corpus, 0.1, 0.6, with_cutoff(1));
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].journal, f.j("C"));
    EXPECT_EQ(recs[0].c1_part, (std::vector<CategoryScore>{{f.c("Y"), 0, 0.0}}));
    EXPECT_EQ(recs[0].c2_part, (std::vector<CategoryScore>{{f.c("X"), 3, 1.0}}));
    EXPECT_EQ(combined_to_tsv(recs, f.corpus),
              "journal_id\tt\tassigned_categories\tsuggested_categories\nC\t3\tY:0.000000\tX:1.000000\n");
}

TEST(Combined, HomeAtHalfNeverQualifies) {
    const Fixture f(star("F", {"H"}, {{"H", 5}, {"O", 5}}).build());
    for (const auto& r : combined(f.profiles, f.corpus, 0.1, 0.5, with_cutoff(1))) EXPECT_NE(r.journal, f.j("F"));
}

TEST(Combined, WeakHomeStrongElsewhere) {
    // r_home = 7/100, r_other = 74/100.
    const Fixture f(star("F", {"H"}, {{"H", 7}, {"O", 74}, {"Z", 19}}).build());
    const auto recs = combined(f.profiles, f.corpus, 0.1, 0.6, with_cutoff(100));
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].journal, f.j("F"));
    EXPECT_NEAR(recs[0].c1_part.at(0).relatedness, 0.07, 1e-12);
    EXPECT_NEAR(recs[0].c2_part.at(0).relatedness, 0.74, 1e-12);
    EXPECT_EQ(recs[0].c2_part.at(0).category, f.c("O"));
}

TEST(Combined, EveryEligibleAssignmentMustBeWeak) {
    const Fixture f(star("F", {"H", "K"}, {{"H", 1}, {"K", 3}, {"O", 16}}).build());
    EXPECT_EQ(combined_journals(combined(f.profiles, f.corpus, 0.1, 0.6, with_cutoff(1))).count(f.j("F").value), 0u);
    EXPECT_EQ(combined_journals(combined(f.profiles, f.corpus, 0.2, 0.6, with_cutoff(1))).count(f.j("F").value), 1u);
}

TEST(Combined, SkipsJournalsWithOnlyMultidisciplinaryAssignments) {
    auto b = star("F", {"H"}, {{"O", 10}});
    b.tables().categories[0].multidisciplinary = true;
    const Fixture f(b.build());
    EXPECT_EQ(combined_journals(combined(f.profiles, f.corpus, 0.1, 0.6, with_cutoff(1))).count(f.j("F").value), 0u);
}

TEST(Combined, RequiresAlphaBelowBeta) {
    const Fixture f(d1());
    EXPECT_THROW(combined(f.profiles, f.corpus, 0.6, 0.6, with_cutoff(1)), InputError);
}

TEST(FlagSummary, CountsJournalsOnce) {
    const std::vector<FlagRecord> flags{{JournalIdx{0}, CategoryIdx{0}, 0, 0, 1, Criterion::C1, true},
                                        {JournalIdx{0}, CategoryIdx{1}, 0, 0, 1, Criterion::C1, true},
                                        {JournalIdx{0}, CategoryIdx{2}, 0, 0, 1, Criterion::C1, true}};
    EXPECT_EQ(journal_flag_summary(flags), (FlagSummary{1, 3}));
    EXPECT_EQ(journal_flag_summary({}), (FlagSummary{0, 0}));
}

TEST(FlagExport, TsvAndJson) {
    const Fixture f(d1());
    const auto flags = criterion_two(f.profiles, f.corpus, 0.6, with_cutoff(1));
    EXPECT_EQ(flags_to_tsv(flags, f.corpus), "journal_id\tcategory_id\tn\tt\tr\tassigned\nA\tY\t2\t3\t0.666667\t0\nC\tX\t3\t3\t1.000000\t0\n");
    const auto j = nlohmann::json::parse(flags_to_json(flags, f.corpus));
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j[1]["journal_id"], "C");
    EXPECT_EQ(j[1]["r"], 1.0);
}

class CriteriaProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(CriteriaProperties, NestingDisjointnessCombinedSubset) {
    synth::SyntheticSpec s;
    s.categories = 6;
    s.journals_per_category = 8;
    s.publications_per_journal = 6;
    s.expected_citations = 5;
    s.affinity = 3;
    s.planted_misassignments = 4;
    s.planted_missing = 4;
    s.seed = GetParam();
    const Fixture f(Corpus::from_tables(synth::generate(s).tables, YearRange{}));
    const auto cfg = with_cutoff(5);

    std::set<Key> prev;
    for (double a : {0.05, 0.1, 0.2, 0.3}) {
        const auto flags = criterion_one(f.profiles, f.corpus, a, cfg);
        for (const auto& r : flags) {
            EXPECT_TRUE(r.assigned);
            EXPECT_LE(r.relatedness, a);
            EXPECT_GE(r.t, cfg.min_citations);
        }
        auto k = keys(flags);
        EXPECT_TRUE(subset(prev, k));
        prev = std::move(k);
    }
    prev.clear();
    for (double b : {0.9, 0.8, 0.7, 0.6, 0.5, 0.3}) {
        const auto flags = criterion_two(f.profiles, f.corpus, b, cfg);
        for (const auto& r : flags) {
            EXPECT_FALSE(r.assigned);
            EXPECT_GE(r.relatedness, b);
        }
        auto k = keys(flags);
        EXPECT_TRUE(subset(prev, k));
        prev = std::move(k);
    }

    const auto c1 = criterion_one(f.profiles, f.corpus, 0.3, cfg);
    const auto c2 = criterion_two(f.profiles, f.corpus, 0.3, cfg);
    const auto k1 = keys(c1), k2 = keys(c2);
    for (const auto& k : k1) EXPECT_EQ(k2.count(k), 0u);
    EXPECT_TRUE(std::is_sorted(c1.begin(), c1.end(), [](const FlagRecord& a, const FlagRecord& b) {
        return std::pair{a.journal, a.category} < std::pair{b.journal, b.category};
    }));

    std::set<std::uint32_t> j1, j2;
    for (const auto& r : c1) j1.insert(r.journal.value);
    for (const auto& r : c2) j2.insert(r.journal.value);
    for (const auto& r : combined(f.profiles, f.corpus, 0.3, 0.3 + 1e-9, cfg)) {
        EXPECT_TRUE(j1.count(r.journal.value));
        EXPECT_TRUE(j2.count(r.journal.value));
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CriteriaProperties, ::testing::Values(4, 8, 15, 16, 23, 42));
