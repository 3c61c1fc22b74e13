#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "jcaudit/config.hpp"
#include "jcaudit/corpus.hpp"

namespace jcaudit::test {

std::filesystem::path data_dir();
std::filesystem::path golden_dir();

/// The three-journal micro-corpus used throughout: X = {A, B}, Y = {C}.
RawTables d1_tables();
Corpus d1();

AuditConfig with_cutoff(std::uint64_t min_citations);

/// Terse construction of small corpora.
class CorpusBuilder {
public:
    CorpusBuilder& category(const std::string& id, bool multidisciplinary = false, const std::string& parent = "");
    CorpusBuilder& journal(const std::string& id, const std::vector<std::string>& categories);
    CorpusBuilder& pub(const std::string& id, const std::string& journal, int year = 2012);
    CorpusBuilder& cite(const std::string& citing, const std::string& cited, std::size_t times = 1);
    CorpusBuilder& ref(const std::string& pub, const std::string& key);

    [[nodiscard]] const RawTables& tables() const noexcept { return t_; }
    [[nodiscard]] RawTables& tables() noexcept { return t_; }
    [[nodiscard]] Corpus build(YearRange window = {}) const;

private:
    RawTables t_;
};

struct Share {
    std::string category;
    std::size_t count;
};

/// Journal `focus` (one publication, assigned to `focus_categories`) whose
/// citations go to one satellite journal per share, so r_{focus,c} is
/// count / total exactly. Categories are created on demand.
CorpusBuilder star(const std::string& focus, const std::vector<std::string>& focus_categories,
                   const std::vector<Share>& shares);

/// `total` journals in category M with exactly `cutoff` citations each:
/// `flagged` of them have r_M = 0, the rest r_M = 1/2 via a private helper
/// journal in M whose own t stays below the cutoff.
Corpus ranked_category(std::size_t total, std::size_t flagged, std::size_t cutoff);

class TempDir {
public:
    explicit TempDir(const std::string& tag = "t");
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

std::string slurp(const std::filesystem::path& file);

/// Every file below `dir` (relative path -> bytes). With `strip_run`, the
/// manifest's per-run block is dropped so trees from separate runs compare.
std::map<std::string, std::string> read_tree(const std::filesystem::path& dir, bool strip_run = true);

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args);

}  // namespace jcaudit::test
