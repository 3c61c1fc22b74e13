#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jcaudit/config.hpp"
#include "jcaudit/report.hpp"

namespace jcaudit::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 1,  ///< validation errors: bad rows, dangling keys, bad config
    kExitIo = 2,     ///< missing files, unwritable destinations
};

struct Options {
    std::optional<std::filesystem::path> config;
    std::optional<std::filesystem::path> out;
    std::optional<std::vector<double>> alpha;
    std::optional<std::vector<double>> beta;
    std::optional<std::uint64_t> min_citations;
    unsigned threads = 1;
    ExportFormat format = ExportFormat::Tsv;
};

/// Config file (if any) with command-line overrides applied, validated.
AuditConfig resolve_config(const Options& opts);

int cmd_audit(const std::filesystem::path& corpus_dir, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_drilldown(const std::filesystem::path& corpus_dir, const std::string& category, const Options& opts,
                  std::ostream& out, std::ostream& err);
int cmd_couple(const std::filesystem::path& corpus_dir, const std::string& category, const Options& opts,
               std::ostream& out, std::ostream& err);
int cmd_stats(const std::filesystem::path& corpus_dir, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_synth(const std::filesystem::path& spec_path, const std::filesystem::path& out_dir,
              std::optional<std::uint64_t> seed, std::ostream& out, std::ostream& err);

/// Full command line, including argv[0].
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jcaudit::cli
