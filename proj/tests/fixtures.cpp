#include "fixtures.hpp"

#include <atomic>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>
#include <unistd.h>

#include "cli.hpp"
#include "jcaudit/tsv.hpp"

namespace jcaudit::test {

namespace fs = std::filesystem;

fs::path data_dir() { return JCAUDIT_TEST_DATA; }
fs::path golden_dir() { return JCAUDIT_TEST_GOLDEN; }

RawTables d1_tables() {
    CorpusBuilder b;
    b.category("X").category("Y");
    b.journal("A", {"X"}).journal("B", {"X"}).journal("C", {"Y"});
    b.pub("a1", "A", 2011).pub("a2", "A", 2012).pub("b1", "B", 2012).pub("c1", "C", 2013);
    b.cite("a1", "b1").cite("a1", "c1").cite("c1", "a2").cite("a2", "a1").cite("b1", "c1");
    return b.tables();
}

Corpus d1() { return Corpus::from_tables(d1_tables(), YearRange{}); }

AuditConfig with_cutoff(std::uint64_t min_citations) {
    AuditConfig cfg;
    cfg.min_citations = min_citations;
    return cfg;
}

CorpusBuilder& CorpusBuilder::category(const std::string& id, bool multi, const std::string& parent) {
    t_.categories.push_back({id, "Category " + id, multi, parent, 0});
    return *this;
}

CorpusBuilder& CorpusBuilder::journal(const std::string& id, const std::vector<std::string>& categories) {
    t_.journals.push_back({id, "Journal " + id, 0});
    for (const auto& c : categories) t_.assignments.push_back({id, c, "", 0});
    return *this;
}

CorpusBuilder& CorpusBuilder::pub(const std::string& id, const std::string& journal, int year) {
    t_.publications.push_back({id, journal, year, 0});
    return *this;
}

CorpusBuilder& CorpusBuilder::cite(const std::string& citing, const std::string& cited, std::size_t times) {
    for (std::size_t i = 0; i < times; ++i) t_.citations.push_back({citing, cited, 0});
    return *this;
}

CorpusBuilder& CorpusBuilder::ref(const std::string& pub, const std::string& key) {
    t_.references.push_back({pub, key, 0});
    t_.has_references = true;
    return *this;
}

Corpus CorpusBuilder::build(YearRange window) const { return Corpus::from_tables(t_, window); }

CorpusBuilder star(const std::string& focus, const std::vector<std::string>& focus_categories,
                   const std::vector<Share>& shares) {
    CorpusBuilder b;
    std::set<std::string> cats(focus_categories.begin(), focus_categories.end());
    for (const auto& s : shares) cats.insert(s.category);
    for (const auto& c : cats) b.category(c);
    b.journal(focus, focus_categories).pub(focus + "-p", focus);
    for (std::size_t k = 0; k < shares.size(); ++k) {
        const auto sat = fmt::format("{}-s{}", focus, k);
        b.journal(sat, {shares[k].category}).pub(sat + "-p", sat);
        b.cite(focus + "-p", sat + "-p", shares[k].count);
    }
    return b;
}

Corpus ranked_category(std::size_t total, std::size_t flagged, std::size_t cutoff) {
    CorpusBuilder b;
    b.category("M").category("O").journal("HUB", {"O"}).pub("hub", "HUB");
    for (std::size_t i = 0; i < total; ++i) {
        const auto j = fmt::format("M{:03}", i), p = fmt::format("m{:03}", i);
        b.journal(j, {"M"}).pub(p, j);
        if (i < flagged) {
            b.cite(p, "hub", cutoff);
        } else {
            const auto h = fmt::format("helper{:03}", i);
            b.journal(h, {"M"}).pub(h + "p", h).cite(p, h + "p", cutoff / 2).cite(p, "hub", cutoff - cutoff / 2);
        }
    }
    return b.build();
}

TempDir::TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() / fmt::format("jcaudit-test-{}-{}-{}", tag, ::getpid(), counter++);
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

std::string slurp(const fs::path& file) { return tsv::read_text(file); }

std::map<std::string, std::string> read_tree(const fs::path& dir, bool strip_run) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        auto rel = fs::relative(e.path(), dir).generic_string();
        auto bytes = slurp(e.path());
        if (strip_run && rel == "manifest.json") {
            auto j = nlohmann::json::parse(bytes);
            j.erase("run");
            bytes = j.dump(2);
        }
        files.emplace(std::move(rel), std::move(bytes));
    }
    return files;
}

CliResult run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"jcaudit"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliResult r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace jcaudit::test
