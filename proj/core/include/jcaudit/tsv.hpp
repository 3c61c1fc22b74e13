#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jcaudit::tsv {

/// One parsed data row; `line` is 1-based and counts the header.
struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// Reads a headered TSV file. The header must match `columns` exactly and
/// every data row must carry exactly that many fields. Empty lines are
/// skipped and a trailing CR is tolerated.
std::vector<Row> read_file(const std::filesystem::path& path,
                           std::span<const std::string_view> columns);

std::vector<Row> parse(std::string_view text, const std::string& origin,
                       std::span<const std::string_view> columns);

/// Appends `fields` joined by tabs plus a newline.
void append_row(std::string& out, std::span<const std::string> fields);
void append_row(std::string& out, std::initializer_list<std::string_view> fields);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace jcaudit::tsv
