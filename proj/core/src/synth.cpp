#include "jcaudit/synth.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "jcaudit/errors.hpp"
#include "jcaudit/tsv.hpp"

namespace jcaudit::synth {

using nlohmann::ordered_json;

void SyntheticSpec::validate() const {
    if (categories == 0 || journals_per_category == 0 || publications_per_journal == 0)
        throw InputError("synthetic spec: categories, journals_per_category and publications_per_journal must be positive");
    if (!(expected_citations > 0.0)) throw InputError("synthetic spec: expected_citations must be positive");
    if (!(affinity >= 1.0)) throw InputError("synthetic spec: affinity must be >= 1");
    if (!(self_citation_rate >= 0.0)) throw InputError("synthetic spec: self_citation_rate must be >= 0");
    if (reference_pool_per_category == 0) throw InputError("synthetic spec: reference_pool_per_category must be positive");
    if (years.first > years.last) throw InputError("synthetic spec: year range is inverted");
    const std::uint64_t journals = std::uint64_t{categories} * journals_per_category;
    if (journals < 2) throw InputError("synthetic spec: need at least two journals");
    if (std::uint64_t{planted_misassignments} + planted_missing > journals)
        throw InputError("synthetic spec: more planted errors than journals");
    if ((planted_misassignments || planted_missing) && categories < 2)
        throw InputError("synthetic spec: planting errors needs at least two categories");
}

std::string spec_to_json(const SyntheticSpec& s) {
    ordered_json doc{{"categories", s.categories},
                     {"journals_per_category", s.journals_per_category},
                     {"publications_per_journal", s.publications_per_journal},
                     {"expected_citations", s.expected_citations},
                     {"affinity", s.affinity},
                     {"planted_misassignments", s.planted_misassignments},
                     {"planted_missing", s.planted_missing},
                     {"seed", s.seed},
                     {"self_citation_rate", s.self_citation_rate},
                     {"references_per_publication", s.references_per_publication},
                     {"reference_pool_per_category", s.reference_pool_per_category},
                     {"year_first", s.years.first},
                     {"year_last", s.years.last}};
    return doc.dump(2) + "\n";
}

SyntheticSpec spec_from_json(std::string_view text) {
    SyntheticSpec s;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(fmt::format("synthetic spec: {}", e.what()));
    }
    if (!doc.is_object()) throw InputError("synthetic spec: expected a JSON object");
    static const std::set<std::string> known{"categories", "journals_per_category", "publications_per_journal",
                                             "expected_citations", "affinity", "planted_misassignments",
                                             "planted_missing", "seed", "self_citation_rate",
                                             "references_per_publication", "reference_pool_per_category",
                                             "year_first", "year_last"};
    for (const auto& [key, _] : doc.items())
        if (!known.count(key)) throw InputError(fmt::format("synthetic spec: unknown field '{}'", key));
    try {
        auto get = [&](const char* key, auto& field) {
            if (doc.contains(key)) doc.at(key).get_to(field);
        };
        get("categories", s.categories);
        get("journals_per_category", s.journals_per_category);
        get("publications_per_journal", s.publications_per_journal);
        get("expected_citations", s.expected_citations);
        get("affinity", s.affinity);
        get("planted_misassignments", s.planted_misassignments);
        get("planted_missing", s.planted_missing);
        get("seed", s.seed);
        get("self_citation_rate", s.self_citation_rate);
        get("references_per_publication", s.references_per_publication);
        get("reference_pool_per_category", s.reference_pool_per_category);
        get("year_first", s.years.first);
        get("year_last", s.years.last);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(fmt::format("synthetic spec: {}", e.what()));
    }
    s.validate();
    return s;
}

std::string_view error_kind_name(ErrorKind k) noexcept {
    switch (k) {
        case ErrorKind::Misassigned: return "misassigned";
        case ErrorKind::MissingAssignment: return "missing-assignment";
        case ErrorKind::None: break;
    }
    return "none";
}

std::size_t GroundTruth::planted(ErrorKind kind) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(journals.begin(), journals.end(), [kind](const TruthEntry& e) { return e.kind == kind; }));
}

std::string truth_to_tsv(const GroundTruth& truth) {
    std::string out;
    tsv::append_row(out, {"journal_id", "true_category", "error_kind"});
    for (const auto& e : truth.journals) {
        std::string cats;
        for (const auto& c : e.true_categories) cats += (cats.empty() ? "" : ";") + c;
        tsv::append_row(out, {e.journal_id, cats, error_kind_name(e.kind)});
    }
    return out;
}

GroundTruth truth_from_tsv(std::string_view text) {
    static constexpr std::string_view cols[] = {"journal_id", "true_category", "error_kind"};
    GroundTruth truth;
    for (auto& row : tsv::parse(text, "ground_truth.tsv", cols)) {
        TruthEntry e;
        e.journal_id = row.fields[0];
        std::string_view cats = row.fields[1];
        while (!cats.empty()) {
            const auto semi = cats.find(';');
            e.true_categories.emplace_back(cats.substr(0, semi));
            if (semi == std::string_view::npos) break;
            cats.remove_prefix(semi + 1);
        }
        const auto& kind = row.fields[2];
        if (kind == "none") e.kind = ErrorKind::None;
        else if (kind == "misassigned") e.kind = ErrorKind::Misassigned;
        else if (kind == "missing-assignment") e.kind = ErrorKind::MissingAssignment;
        else throw InputError("ground_truth.tsv", row.line, fmt::format("unknown error_kind '{}'", kind));
        truth.journals.push_back(std::move(e));
    }
    return truth;
}

namespace {

int digits(std::uint64_t n) {
    int d = 1;
    while (n >= 10) n /= 10, ++d;
    return d;
}

}  // namespace

SyntheticCorpus generate(const SyntheticSpec& spec) {
    spec.validate();

    const std::uint32_t nc = spec.categories;
    const std::uint32_t nj = nc * spec.journals_per_category;
    const std::uint32_t ppj = spec.publications_per_journal;
    const std::uint64_t np = std::uint64_t{nj} * ppj;

    const int cw = digits(nc - 1), jw = digits(nj - 1), pw = digits(np - 1);
    auto cat_id = [&](std::uint32_t c) { return fmt::format("C{:0{}}", c, cw); };
    auto journal_id = [&](std::uint32_t j) { return fmt::format("J{:0{}}", j, jw); };
    auto pub_id = [&](std::uint64_t p) { return fmt::format("P{:0{}}", p, pw); };

    // Independent streams so that optional knobs do not perturb the rest.
    std::mt19937_64 rng(spec.seed);
    std::mt19937_64 self_rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    std::mt19937_64 ref_rng(spec.seed ^ 0xc2b2ae3d27d4eb4fULL);

    // Behaviour and recorded categories.
    std::vector<std::vector<std::uint32_t>> behaviour(nj), recorded(nj);
    std::vector<ErrorKind> kind(nj, ErrorKind::None);
    for (std::uint32_t j = 0; j < nj; ++j) {
        behaviour[j] = {j / spec.journals_per_category};
        recorded[j] = behaviour[j];
    }
    {
        std::vector<std::uint32_t> order(nj);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::uniform_int_distribution<std::uint32_t> other(0, nc - 2);
        auto other_than = [&](std::uint32_t c) {
            const auto o = other(rng);
            return o >= c ? o + 1 : o;
        };
        std::size_t k = 0;
        for (std::uint32_t i = 0; i < spec.planted_misassignments; ++i, ++k) {
            const auto j = order[k];
            recorded[j] = {other_than(behaviour[j][0])};
            kind[j] = ErrorKind::Misassigned;
        }
        for (std::uint32_t i = 0; i < spec.planted_missing; ++i, ++k) {
            const auto j = order[k];
            behaviour[j].push_back(other_than(behaviour[j][0]));
            kind[j] = ErrorKind::MissingAssignment;
        }
    }

    std::vector<std::vector<std::uint32_t>> members(nc);
    for (std::uint32_t j = 0; j < nj; ++j)
        for (auto c : behaviour[j]) members[c].push_back(j);

    std::vector<std::discrete_distribution<std::uint32_t>> pick_category(nj);
    for (std::uint32_t j = 0; j < nj; ++j) {
        std::vector<double> w(nc, 1.0);
        for (auto c : behaviour[j]) w[c] = spec.affinity;
        pick_category[j] = std::discrete_distribution<std::uint32_t>(w.begin(), w.end());
    }

    SyntheticCorpus out;
    auto& t = out.tables;
    for (std::uint32_t c = 0; c < nc; ++c) t.categories.push_back({cat_id(c), fmt::format("Category {}", c), false, "", 0});
    for (std::uint32_t j = 0; j < nj; ++j) {
        t.journals.push_back({journal_id(j), fmt::format("Journal {}", j), 0});
        for (auto c : recorded[j]) t.assignments.push_back({journal_id(j), cat_id(c), "", 0});
    }
    std::uniform_int_distribution<int> year(spec.years.first, spec.years.last);
    for (std::uint64_t p = 0; p < np; ++p)
        t.publications.push_back({pub_id(p), journal_id(static_cast<std::uint32_t>(p / ppj)), year(rng), 0});

    std::poisson_distribution<int> n_cites(spec.expected_citations);
    std::uniform_int_distribution<std::uint32_t> pick_pub(0, ppj - 1);
    for (std::uint64_t p = 0; p < np; ++p) {
        const auto j = static_cast<std::uint32_t>(p / ppj);
        const int k = n_cites(rng);
        for (int e = 0; e < k; ++e) {
            std::uint32_t target;
            while (true) {
                const auto c = pick_category[j](rng);
                const auto& m = members[c];
                if (m.empty() || (m.size() == 1 && m[0] == j)) continue;
                std::uniform_int_distribution<std::size_t> pick(0, m.size() - 1);
                do target = m[pick(rng)];
                while (target == j);
                break;
            }
            const std::uint64_t q = std::uint64_t{target} * ppj + pick_pub(rng);
            t.citations.push_back({pub_id(p), pub_id(q), 0});
        }
    }

    if (spec.self_citation_rate > 0.0 && ppj >= 2) {
        std::poisson_distribution<int> n_self(spec.self_citation_rate);
        std::uniform_int_distribution<std::uint32_t> other_pub(0, ppj - 2);
        for (std::uint64_t p = 0; p < np; ++p) {
            const auto j = p / ppj;
            const auto local = static_cast<std::uint32_t>(p % ppj);
            const int k = n_self(self_rng);
            for (int e = 0; e < k; ++e) {
                auto o = other_pub(self_rng);
                if (o >= local) ++o;
                t.citations.push_back({pub_id(p), pub_id(j * ppj + o), 0});
            }
        }
    }

    t.has_references = true;
    if (spec.references_per_publication > 0) {
        std::uniform_int_distribution<std::uint32_t> pick_key(0, spec.reference_pool_per_category - 1);
        const int kw = digits(spec.reference_pool_per_category - 1);
        for (std::uint64_t p = 0; p < np; ++p) {
            const auto j = static_cast<std::uint32_t>(p / ppj);
            for (std::uint32_t r = 0; r < spec.references_per_publication; ++r) {
                const auto c = pick_category[j](ref_rng);
                t.references.push_back({pub_id(p), fmt::format("R{}-{:0{}}", cat_id(c), pick_key(ref_rng), kw), 0});
            }
        }
    }

    for (std::uint32_t j = 0; j < nj; ++j) {
        TruthEntry e{journal_id(j), {}, {}, kind[j]};
        for (auto c : behaviour[j]) e.true_categories.push_back(cat_id(c));
        for (auto c : recorded[j]) e.recorded_categories.push_back(cat_id(c));
        out.truth.journals.push_back(std::move(e));
    }
    return out;
}

void write_synthetic(const SyntheticCorpus& corpus, const SyntheticSpec& spec, const std::filesystem::path& dir) {
    write_tables(corpus.tables, dir);
    tsv::write_text(dir / "ground_truth.tsv", truth_to_tsv(corpus.truth));
    tsv::write_text(dir / "spec.json", spec_to_json(spec));
}

// --- oracles ------------------------------------------------------------------

namespace {

CitationProfile to_profile(JournalIdx j, std::uint64_t t, const std::map<std::uint32_t, std::uint64_t>& n) {
    CitationProfile p{j, t, {}};
    for (const auto& [c, v] : n) p.per_category.emplace_back(CategoryIdx{c}, v);
    return p;
}

}  // namespace

CitationProfile brute_force_profile(const Corpus& corpus, JournalIdx journal) {
    std::uint64_t t = 0;
    std::map<std::uint32_t, std::uint64_t> n;
    for (const auto& e : corpus.edges()) {
        if (!corpus.in_window(e.citing) || !corpus.in_window(e.cited)) continue;
        const auto citing = corpus.publication(e.citing).journal;
        const auto cited = corpus.publication(e.cited).journal;
        if (citing == cited) continue;
        if (citing != journal && cited != journal) continue;
        const auto other = citing == journal ? cited : citing;
        ++t;
        for (const auto& a : corpus.assignments())
            if (a.journal == other) ++n[a.category.value];
    }
    return to_profile(journal, t, n);
}

std::vector<CitationProfile> brute_force_profiles(const Corpus& corpus) {
    const auto nj = corpus.journal_count();
    std::vector<std::uint64_t> t(nj, 0);
    std::vector<std::map<std::uint32_t, std::uint64_t>> n(nj);
    for (const auto& e : corpus.edges()) {
        if (!corpus.in_window(e.citing) || !corpus.in_window(e.cited)) continue;
        const auto citing = corpus.publication(e.citing).journal;
        const auto cited = corpus.publication(e.cited).journal;
        if (citing == cited) continue;
        ++t[citing.value];
        ++t[cited.value];
        for (const auto& a : corpus.assignments()) {
            if (a.journal == cited) ++n[citing.value][a.category.value];
            if (a.journal == citing) ++n[cited.value][a.category.value];
        }
    }
    std::vector<CitationProfile> out;
    out.reserve(nj);
    for (std::uint32_t j = 0; j < nj; ++j) out.push_back(to_profile(JournalIdx{j}, t[j], n[j]));
    return out;
}

std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> brute_force_coupling(const Corpus& corpus,
                                                                                      CouplingWeight weight) {
    const auto pubs = corpus.publications();
    std::vector<std::set<std::string>> refs(pubs.size());
    for (const auto& r : corpus.references()) refs[r.publication.value].insert(corpus.ref_keys()[r.key.value]);

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> out;
    for (std::uint32_t p = 0; p < pubs.size(); ++p) {
        if (!corpus.in_window(PublicationIdx{p})) continue;
        for (std::uint32_t q = p + 1; q < pubs.size(); ++q) {
            if (!corpus.in_window(PublicationIdx{q})) continue;
            if (pubs[p].journal == pubs[q].journal) continue;
            std::uint64_t shared = 0;
            for (const auto& key : refs[p])
                if (refs[q].count(key)) ++shared;
            if (shared == 0) continue;
            auto a = pubs[p].journal.value, b = pubs[q].journal.value;
            if (a > b) std::swap(a, b);
            out[{a, b}] += weight == CouplingWeight::Binary ? 1 : shared;
        }
    }
    return out;
}

// --- scoring --------------------------------------------------------------------

DetectionMetrics evaluate_detection(std::span<const FlagRecord> flags, const Corpus& corpus, const GroundTruth& truth,
                                    Criterion kind) {
    if (truth.journals.size() != corpus.journal_count())
        throw InputError(fmt::format("ground truth lists {} journals, corpus has {}", truth.journals.size(),
                                     corpus.journal_count()));
    std::unordered_map<std::string, const TruthEntry*> by_id;
    for (const auto& e : truth.journals) by_id.emplace(e.journal_id, &e);

    // Recorded categories come from the corpus itself, so a truth file read
    // back from disk scores the same as the in-memory one.
    std::set<std::pair<std::string, std::string>> planted;
    for (const auto& e : truth.journals) {
        const auto j = corpus.find_journal(e.journal_id);
        if (!j) throw InputError(fmt::format("ground-truth journal '{}' is not in the corpus", e.journal_id));
        std::vector<std::string> recorded;
        for (auto c : corpus.categories_of(*j)) recorded.push_back(corpus.category(c).id);
        auto contains = [](const std::vector<std::string>& v, const std::string& x) {
            return std::find(v.begin(), v.end(), x) != v.end();
        };
        if (kind == Criterion::C1 && e.kind == ErrorKind::Misassigned) {
            for (const auto& c : recorded)
                if (!contains(e.true_categories, c)) planted.emplace(e.journal_id, c);
        } else if (kind == Criterion::C2 && e.kind != ErrorKind::None) {
            // A misassigned journal is also missing its true category.
            for (const auto& c : e.true_categories)
                if (!contains(recorded, c)) planted.emplace(e.journal_id, c);
        }
    }

    DetectionMetrics m;
    m.flagged = flags.size();
    m.planted = planted.size();
    for (const auto& f : flags) {
        const auto& jid = corpus.journal(f.journal).id;
        if (!by_id.count(jid)) throw InputError(fmt::format("flagged journal '{}' is not in the ground truth", jid));
        if (planted.count({jid, corpus.category(f.category).id})) ++m.hits;
    }
    m.precision = m.flagged ? static_cast<double>(m.hits) / static_cast<double>(m.flagged) : 1.0;
    m.recall = m.planted ? static_cast<double>(m.hits) / static_cast<double>(m.planted) : 1.0;
    return m;
}

}  // namespace jcaudit::synth
