#include "manifest.hpp"

#include <chrono>
#include <ctime>
#include <system_error>

#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>
#include <unistd.h>

#include "jcaudit/errors.hpp"
#include "jcaudit/tsv.hpp"

namespace jcaudit::cli {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 digest failed");
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

std::string sha256_file(const fs::path& path) {
    return sha256_hex(tsv::read_text(path));
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void OutputTree::add(std::string name, std::string content) {
    files_[std::move(name)] = std::move(content);
}

void OutputTree::commit(const fs::path& dest) const {
    std::error_code ec;
    const fs::path target = dest.has_filename() ? dest : dest.parent_path();
    fs::path parent = target.parent_path();
    if (parent.empty()) parent = ".";
    fs::create_directories(parent, ec);
    if (ec) throw IoError(fmt::format("cannot create '{}': {}", parent.string(), ec.message()));
    if (fs::exists(target, ec) && !fs::is_directory(target, ec))
        throw IoError(fmt::format("output path '{}' exists and is not a directory", target.string()));

    const fs::path staging = parent / fmt::format(".{}.staging-{}", target.filename().string(), ::getpid());
    fs::remove_all(staging, ec);
    fs::create_directory(staging, ec);
    if (ec) throw IoError(fmt::format("cannot create '{}': {}", staging.string(), ec.message()));
    try {
        for (const auto& [name, content] : files_) tsv::write_text(staging / name, content);
        if (!fs::exists(target)) {
            fs::rename(staging, target);
            return;
        }
        for (const auto& [name, _] : files_) fs::rename(staging / name, target / name);
        fs::remove_all(staging);
    } catch (const fs::filesystem_error& e) {
        fs::remove_all(staging, ec);
        throw IoError(fmt::format("cannot write outputs to '{}': {}", target.string(), e.code().message()));
    } catch (...) {
        fs::remove_all(staging, ec);
        throw;
    }
}

std::string RunManifest::to_json(const OutputTree& outputs) const {
    using nlohmann::ordered_json;
    auto inputs_json = ordered_json::array();
    for (const auto& [path, digest] : inputs) inputs_json.push_back({{"path", path}, {"sha256", digest}});
    auto outputs_json = ordered_json::array();
    for (const auto& [name, content] : outputs.files())
        outputs_json.push_back({{"file", name}, {"sha256", sha256_hex(content)}});
    ordered_json doc{{"tool", "jcaudit"},
                     {"version", tool_version},
                     {"command", command},
                     {"config", config_text},
                     {"inputs", std::move(inputs_json)},
                     {"outputs", std::move(outputs_json)},
                     {"run", {{"started_utc", started_utc}, {"finished_utc", finished_utc}, {"threads", threads}}}};
    return doc.dump(2) + "\n";
}

}  // namespace jcaudit::cli
