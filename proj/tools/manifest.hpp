#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace jcaudit::cli {

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Files produced by one command, keyed by file name. Written to a staging
/// directory next to the destination and moved into place only once every
/// file is on disk.
class OutputTree {
public:
    void add(std::string name, std::string content);
    [[nodiscard]] const std::map<std::string, std::string>& files() const noexcept { return files_; }

    /// Throws IoError when the destination cannot be created or written.
    void commit(const std::filesystem::path& dest) const;

private:
    std::map<std::string, std::string> files_;
};

struct RunManifest {
    std::string tool_version;
    std::string command;
    std::string config_text;
    std::vector<std::pair<std::string, std::string>> inputs;  ///< (path, sha256)
    std::string started_utc;
    std::string finished_utc;
    unsigned threads = 1;

    /// `run` holds the fields that legitimately differ between identical
    /// runs (timestamps, thread count); everything else is reproducible.
    [[nodiscard]] std::string to_json(const OutputTree& outputs) const;
};

std::string utc_now();

}  // namespace jcaudit::cli
