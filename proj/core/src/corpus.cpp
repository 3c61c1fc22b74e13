#include "jcaudit/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <future>
#include <numeric>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "jcaudit/errors.hpp"
#include "jcaudit/tsv.hpp"

namespace jcaudit {

namespace {

constexpr std::string_view kJournalCols[] = {"journal_id", "title"};
constexpr std::string_view kCategoryCols[] = {"category_id", "label", "multidisciplinary", "parent_id"};
constexpr std::string_view kAssignmentCols[] = {"journal_id", "category_id", "snapshot"};
constexpr std::string_view kPublicationCols[] = {"pub_id", "journal_id", "year"};
constexpr std::string_view kCitationCols[] = {"citing_pub_id", "cited_pub_id"};
constexpr std::string_view kReferenceCols[] = {"pub_id", "ref_key"};

const std::string kJournals{kJournalsFile};
const std::string kCategories{kCategoriesFile};
const std::string kAssignments{kAssignmentsFile};
const std::string kPublications{kPublicationsFile};
const std::string kCitations{kCitationsFile};
const std::string kReferences{kReferencesFile};

bool is_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
        if (s[i] < '0' || s[i] > '9') return false;
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

// Undated sorts before every dated snapshot; ISO dates compare as strings.
bool snapshot_less(const std::optional<std::string>& a, const std::optional<std::string>& b) {
    if (!a) return b.has_value();
    if (!b) return false;
    return *a < *b;
}

}  // namespace

std::vector<Assignment> resolve_assignments(std::span<const Assignment> raw) {
    std::vector<Assignment> sorted(raw.begin(), raw.end());
    std::sort(sorted.begin(), sorted.end(), [](const Assignment& a, const Assignment& b) {
        if (a.journal != b.journal) return a.journal < b.journal;
        if (a.category != b.category) return a.category < b.category;
        return snapshot_less(a.snapshot, b.snapshot);
    });

    std::vector<Assignment> out;
    out.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        std::optional<std::string> latest = sorted[i].snapshot;
        while (j < sorted.size() && sorted[j].journal == sorted[i].journal) {
            if (snapshot_less(latest, sorted[j].snapshot)) latest = sorted[j].snapshot;
            ++j;
        }
        for (std::size_t k = i; k < j; ++k)
            if (sorted[k].snapshot == latest) out.push_back(sorted[k]);
        i = j;
    }
    return out;
}

Corpus Corpus::from_tables(const RawTables& t, YearRange window) {
    if (window.first > window.last)
        throw InputError(fmt::format("window start {} after end {}", window.first, window.last));

    auto reject_dupes = [](std::vector<std::pair<std::string, std::size_t>> ids, const std::string& file,
                           const char* what) {
        std::sort(ids.begin(), ids.end());
        for (std::size_t i = 1; i < ids.size(); ++i)
            if (ids[i].first == ids[i - 1].first)
                throw InputError(file, ids[i].second, fmt::format("duplicate {} '{}'", what, ids[i].first));
    };

    Corpus c;
    c.window_ = window;

    // Journals, in id order.
    {
        std::vector<std::pair<std::string, std::size_t>> ids;
        for (const auto& r : t.journals) {
            if (r.id.empty()) throw InputError(kJournals, r.line, "empty journal_id");
            ids.emplace_back(r.id, r.line);
        }
        reject_dupes(ids, kJournals, "journal_id");
        std::vector<std::size_t> order(t.journals.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return t.journals[a].id < t.journals[b].id; });
        for (auto i : order) c.journals_.push_back(Journal{t.journals[i].id, t.journals[i].title});
        for (std::uint32_t i = 0; i < c.journals_.size(); ++i) c.journal_by_id_.emplace(c.journals_[i].id, JournalIdx{i});
    }

    // Categories, in id order; parents resolved afterwards.
    {
        std::vector<std::pair<std::string, std::size_t>> ids;
        for (const auto& r : t.categories) {
            if (r.id.empty()) throw InputError(kCategories, r.line, "empty category_id");
            ids.emplace_back(r.id, r.line);
        }
        reject_dupes(ids, kCategories, "category_id");
        std::vector<std::size_t> order(t.categories.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return t.categories[a].id < t.categories[b].id; });
        for (auto i : order)
            c.categories_.push_back(Category{t.categories[i].id, t.categories[i].label,
                                             t.categories[i].multidisciplinary, std::nullopt});
        for (std::uint32_t i = 0; i < c.categories_.size(); ++i)
            c.category_by_id_.emplace(c.categories_[i].id, CategoryIdx{i});
        for (std::size_t k = 0; k < order.size(); ++k) {
            const auto& r = t.categories[order[k]];
            if (r.parent_id.empty()) continue;
            auto it = c.category_by_id_.find(r.parent_id);
            if (it == c.category_by_id_.end())
                throw InputError(kCategories, r.line, fmt::format("unknown parent_id '{}'", r.parent_id));
            c.categories_[k].parent = it->second;
        }
        // Parent chains must terminate.
        for (std::size_t k = 0; k < c.categories_.size(); ++k) {
            std::size_t steps = 0;
            auto cur = c.categories_[k].parent;
            while (cur) {
                if (++steps > c.categories_.size())
                    throw InputError(kCategories, t.categories[order[k]].line,
                                     fmt::format("parent chain of '{}' is cyclic", c.categories_[k].id));
                cur = c.categories_[cur->value].parent;
            }
        }
    }

    // Publications, in id order.
    std::unordered_map<std::string, PublicationIdx> pub_by_id;
    {
        std::vector<std::pair<std::string, std::size_t>> ids;
        for (const auto& r : t.publications) {
            if (r.id.empty()) throw InputError(kPublications, r.line, "empty pub_id");
            ids.emplace_back(r.id, r.line);
        }
        reject_dupes(ids, kPublications, "pub_id");
        std::vector<std::size_t> order(t.publications.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return t.publications[a].id < t.publications[b].id; });
        c.publications_.reserve(order.size());
        for (auto i : order) {
            const auto& r = t.publications[i];
            auto j = c.journal_by_id_.find(r.journal_id);
            if (j == c.journal_by_id_.end())
                throw InputError(kPublications, r.line, fmt::format("unknown journal_id '{}'", r.journal_id));
            c.publications_.push_back(Publication{r.id, j->second, r.year});
        }
        pub_by_id.reserve(c.publications_.size());
        for (std::uint32_t i = 0; i < c.publications_.size(); ++i)
            pub_by_id.emplace(c.publications_[i].id, PublicationIdx{i});
    }

    // Assignments.
    {
        std::vector<Assignment> raw;
        raw.reserve(t.assignments.size());
        std::set<std::tuple<std::uint32_t, std::uint32_t, std::string>> seen;
        for (const auto& r : t.assignments) {
            auto j = c.journal_by_id_.find(r.journal_id);
            if (j == c.journal_by_id_.end())
                throw InputError(kAssignments, r.line, fmt::format("unknown journal_id '{}'", r.journal_id));
            auto k = c.category_by_id_.find(r.category_id);
            if (k == c.category_by_id_.end())
                throw InputError(kAssignments, r.line, fmt::format("unknown category_id '{}'", r.category_id));
            if (!r.snapshot.empty() && !is_iso_date(r.snapshot))
                throw InputError(kAssignments, r.line,
                                 fmt::format("snapshot '{}' is not an ISO date (YYYY-MM-DD)", r.snapshot));
            if (!seen.emplace(j->second.value, k->second.value, r.snapshot).second)
                throw InputError(kAssignments, r.line,
                                 fmt::format("duplicate assignment {} -> {} ({})", r.journal_id, r.category_id,
                                             r.snapshot.empty() ? "undated" : r.snapshot));
            raw.push_back(Assignment{j->second, k->second,
                                     r.snapshot.empty() ? std::nullopt : std::optional<std::string>(r.snapshot)});
        }
        c.assignments_ = resolve_assignments(raw);
    }

    // Citation edges, file order preserved.
    c.edges_.reserve(t.citations.size());
    for (const auto& r : t.citations) {
        auto a = pub_by_id.find(r.citing_id);
        if (a == pub_by_id.end())
            throw InputError(kCitations, r.line, fmt::format("unknown citing_pub_id '{}'", r.citing_id));
        auto b = pub_by_id.find(r.cited_id);
        if (b == pub_by_id.end())
            throw InputError(kCitations, r.line, fmt::format("unknown cited_pub_id '{}'", r.cited_id));
        if (a->second == b->second)
            throw InputError(kCitations, r.line, fmt::format("publication '{}' cites itself", r.citing_id));
        c.edges_.push_back(CitationEdge{a->second, b->second});
    }

    // Reference records; keys interned in first-seen order.
    c.has_references_ = t.has_references;
    {
        std::unordered_map<std::string, RefKeyIdx> key_ids;
        c.references_.reserve(t.references.size());
        for (const auto& r : t.references) {
            auto p = pub_by_id.find(r.pub_id);
            if (p == pub_by_id.end())
                throw InputError(kReferences, r.line, fmt::format("unknown pub_id '{}'", r.pub_id));
            if (r.ref_key.empty()) throw InputError(kReferences, r.line, "empty ref_key");
            auto [it, fresh] = key_ids.try_emplace(r.ref_key, RefKeyIdx{static_cast<std::uint32_t>(c.ref_keys_.size())});
            if (fresh) c.ref_keys_.push_back(r.ref_key);
            c.references_.push_back(ReferenceRecord{p->second, it->second});
        }
    }

    c.build_indexes();
    return c;
}

void Corpus::build_indexes() {
    const std::size_t nj = journals_.size();
    const std::size_t nc = categories_.size();

    journal_cat_offsets_.assign(nj + 1, 0);
    cat_journal_offsets_.assign(nc + 1, 0);
    for (const auto& a : assignments_) {
        ++journal_cat_offsets_[a.journal.value + 1];
        ++cat_journal_offsets_[a.category.value + 1];
    }
    std::partial_sum(journal_cat_offsets_.begin(), journal_cat_offsets_.end(), journal_cat_offsets_.begin());
    std::partial_sum(cat_journal_offsets_.begin(), cat_journal_offsets_.end(), cat_journal_offsets_.begin());

    journal_cats_.resize(assignments_.size());
    cat_journals_.resize(assignments_.size());
    auto jfill = journal_cat_offsets_;
    auto cfill = cat_journal_offsets_;
    // assignments_ is sorted by (journal, category), so both lists come out sorted.
    for (const auto& a : assignments_) {
        journal_cats_[jfill[a.journal.value]++] = a.category;
        cat_journals_[cfill[a.category.value]++] = a.journal;
    }
}

std::span<const CategoryIdx> Corpus::categories_of(JournalIdx j) const {
    const auto b = journal_cat_offsets_.at(j.value), e = journal_cat_offsets_.at(j.value + 1);
    return {journal_cats_.data() + b, e - b};
}

std::span<const JournalIdx> Corpus::journals_in(CategoryIdx c) const {
    const auto b = cat_journal_offsets_.at(c.value), e = cat_journal_offsets_.at(c.value + 1);
    return {cat_journals_.data() + b, e - b};
}

bool Corpus::is_assigned(JournalIdx j, CategoryIdx c) const {
    const auto cats = categories_of(j);
    return std::binary_search(cats.begin(), cats.end(), c);
}

std::optional<JournalIdx> Corpus::find_journal(std::string_view id) const {
    auto it = journal_by_id_.find(std::string(id));
    if (it == journal_by_id_.end()) return std::nullopt;
    return it->second;
}

std::optional<CategoryIdx> Corpus::find_category(std::string_view id) const {
    auto it = category_by_id_.find(std::string(id));
    if (it == category_by_id_.end()) return std::nullopt;
    return it->second;
}

JournalIdx Corpus::journal_index(std::string_view id) const {
    if (auto j = find_journal(id)) return *j;
    throw UnknownKeyError("journal", std::string(id));
}

CategoryIdx Corpus::category_index(std::string_view id) const {
    if (auto c = find_category(id)) return *c;
    throw UnknownKeyError("category", std::string(id));
}

Corpus Corpus::with_window(YearRange window) const {
    if (window.first > window.last)
        throw InputError(fmt::format("window start {} after end {}", window.first, window.last));
    Corpus copy = *this;
    copy.window_ = window;
    return copy;
}

RawTables Corpus::to_tables() const {
    RawTables t;
    for (const auto& j : journals_) t.journals.push_back({j.id, j.title});
    for (const auto& c : categories_)
        t.categories.push_back({c.id, c.label, c.multidisciplinary, c.parent ? categories_[c.parent->value].id : ""});
    for (const auto& a : assignments_)
        t.assignments.push_back({journals_[a.journal.value].id, categories_[a.category.value].id, a.snapshot.value_or("")});
    for (const auto& p : publications_) t.publications.push_back({p.id, journals_[p.journal.value].id, p.year});
    for (const auto& e : edges_) t.citations.push_back({publications_[e.citing.value].id, publications_[e.cited.value].id});
    for (const auto& r : references_)
        t.references.push_back({publications_[r.publication.value].id, ref_keys_[r.key.value]});
    t.has_references = has_references_;
    return t;
}

bool Corpus::operator==(const Corpus& o) const {
    return journals_ == o.journals_ && categories_ == o.categories_ && assignments_ == o.assignments_ &&
           publications_ == o.publications_ && edges_ == o.edges_ && references_ == o.references_ &&
           ref_keys_ == o.ref_keys_ && has_references_ == o.has_references_ && window_ == o.window_;
}

CorpusPaths CorpusPaths::in_directory(const std::filesystem::path& dir) {
    CorpusPaths p{dir / kJournalsFile, dir / kCategoriesFile, dir / kAssignmentsFile,
                  dir / kPublicationsFile, dir / kCitationsFile, std::nullopt};
    if (std::filesystem::exists(dir / kReferencesFile)) p.references = dir / kReferencesFile;
    return p;
}

namespace {

void require_file(const std::filesystem::path& p) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(p, ec))
        throw IoError(fmt::format("missing input file '{}'", p.string()));
}

int parse_year(const std::string& s, const std::string& file, std::size_t line) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw InputError(file, line, fmt::format("year '{}' is not an integer", s));
    return v;
}

}  // namespace

RawTables read_tables(const CorpusPaths& paths) {
    for (const auto* p : {&paths.journals, &paths.categories, &paths.assignments, &paths.publications, &paths.citations})
        require_file(*p);
    if (paths.references) require_file(*paths.references);

    auto read = [](const std::filesystem::path& p, std::span<const std::string_view> cols) {
        return std::async(std::launch::async, [p, cols] {
            return tsv::parse(tsv::read_text(p), p.filename().string(), cols);
        });
    };
    auto fj = read(paths.journals, kJournalCols);
    auto fc = read(paths.categories, kCategoryCols);
    auto fa = read(paths.assignments, kAssignmentCols);
    auto fp = read(paths.publications, kPublicationCols);
    auto fe = read(paths.citations, kCitationCols);
    std::future<std::vector<tsv::Row>> fr;
    if (paths.references) fr = read(*paths.references, kReferenceCols);

    RawTables t;
    for (auto& r : fj.get()) t.journals.push_back({std::move(r.fields[0]), std::move(r.fields[1]), r.line});
    for (auto& r : fc.get()) {
        const auto& flag = r.fields[2];
        if (flag != "0" && flag != "1")
            throw InputError(kCategories, r.line, fmt::format("multidisciplinary must be 0 or 1, got '{}'", flag));
        t.categories.push_back({std::move(r.fields[0]), std::move(r.fields[1]), flag == "1", std::move(r.fields[3]), r.line});
    }
    for (auto& r : fa.get())
        t.assignments.push_back({std::move(r.fields[0]), std::move(r.fields[1]), std::move(r.fields[2]), r.line});
    for (auto& r : fp.get())
        t.publications.push_back({std::move(r.fields[0]), std::move(r.fields[1]),
                                  parse_year(r.fields[2], kPublications, r.line), r.line});
    for (auto& r : fe.get()) t.citations.push_back({std::move(r.fields[0]), std::move(r.fields[1]), r.line});
    if (paths.references) {
        t.has_references = true;
        for (auto& r : fr.get()) t.references.push_back({std::move(r.fields[0]), std::move(r.fields[1]), r.line});
    }
    return t;
}

Corpus load_corpus(const CorpusPaths& paths, const AuditConfig& cfg) {
    return Corpus::from_tables(read_tables(paths), cfg.window);
}

namespace {

void check_field(const std::string& f, const std::string& file) {
    if (f.find_first_of("\t\n\r") != std::string::npos)
        throw InputError(file, 0, fmt::format("field '{}' contains a tab or line break", f));
}

template <class Rows, class Fn>
std::string render(std::span<const std::string_view> cols, const Rows& rows, const std::string& file, Fn&& fields) {
    std::string out;
    tsv::append_row(out, std::vector<std::string>(cols.begin(), cols.end()));
    for (const auto& r : rows) {
        std::vector<std::string> f = fields(r);
        for (const auto& s : f) check_field(s, file);
        tsv::append_row(out, f);
    }
    return out;
}

}  // namespace

void write_tables(const RawTables& t, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));

    using R = RawTables;
    tsv::write_text(dir / kJournalsFile, render(kJournalCols, t.journals, kJournals,
        [](const R::JournalRow& r) { return std::vector<std::string>{r.id, r.title}; }));
    tsv::write_text(dir / kCategoriesFile, render(kCategoryCols, t.categories, kCategories,
        [](const R::CategoryRow& r) {
            return std::vector<std::string>{r.id, r.label, r.multidisciplinary ? "1" : "0", r.parent_id};
        }));
    tsv::write_text(dir / kAssignmentsFile, render(kAssignmentCols, t.assignments, kAssignments,
        [](const R::AssignmentRow& r) { return std::vector<std::string>{r.journal_id, r.category_id, r.snapshot}; }));
    tsv::write_text(dir / kPublicationsFile, render(kPublicationCols, t.publications, kPublications,
        [](const R::PublicationRow& r) { return std::vector<std::string>{r.id, r.journal_id, std::to_string(r.year)}; }));
    tsv::write_text(dir / kCitationsFile, render(kCitationCols, t.citations, kCitations,
        [](const R::CitationRow& r) { return std::vector<std::string>{r.citing_id, r.cited_id}; }));
    if (t.has_references)
        tsv::write_text(dir / kReferencesFile, render(kReferenceCols, t.references, kReferences,
            [](const R::ReferenceRow& r) { return std::vector<std::string>{r.pub_id, r.ref_key}; }));
}

ValidationReport validate_corpus(const Corpus& c) {
    ValidationReport r;
    for (std::uint32_t j = 0; j < c.journal_count(); ++j)
        if (c.categories_of(JournalIdx{j}).empty()) r.unassigned_journals.push_back(JournalIdx{j});
    for (std::uint32_t k = 0; k < c.category_count(); ++k)
        if (c.journals_in(CategoryIdx{k}).empty()) r.empty_categories.push_back(CategoryIdx{k});
    for (std::uint32_t p = 0; p < c.publications().size(); ++p)
        if (!c.in_window(PublicationIdx{p})) r.out_of_window_publications.push_back(PublicationIdx{p});
    for (const auto& e : c.edges())
        if (c.publication(e.citing).journal == c.publication(e.cited).journal) ++r.self_citation_edges;
    return r;
}

std::string validation_to_tsv(const ValidationReport& r, const Corpus& c) {
    std::string out;
    tsv::append_row(out, {"kind", "id"});
    for (auto j : r.unassigned_journals) tsv::append_row(out, {"unassigned_journal", c.journal(j).id});
    for (auto k : r.empty_categories) tsv::append_row(out, {"empty_category", c.category(k).id});
    for (auto p : r.out_of_window_publications) tsv::append_row(out, {"out_of_window_publication", c.publication(p).id});
    tsv::append_row(out, {"self_citation_edges", std::to_string(r.self_citation_edges)});
    return out;
}

}  // namespace jcaudit
