#include "jcaudit/tsv.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "jcaudit/errors.hpp"

namespace jcaudit::tsv {

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        out.emplace_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    return out;
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError(fmt::format("failed reading '{}'", path.string()));
    return std::move(ss).str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

std::vector<Row> parse(std::string_view text, const std::string& origin,
                       std::span<const std::string_view> columns) {
    std::vector<Row> rows;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        auto fields = split_tabs(line);
        if (!header_seen) {
            header_seen = true;
            bool ok = fields.size() == columns.size();
            for (std::size_t i = 0; ok && i < columns.size(); ++i) ok = fields[i] == columns[i];
            if (!ok) {
                std::string expected;
                for (auto c : columns) expected += (expected.empty() ? "" : "\\t") + std::string(c);
                throw InputError(origin, line_no, fmt::format("header must be '{}'", expected));
            }
            continue;
        }
        if (fields.size() != columns.size())
            throw InputError(origin, line_no,
                             fmt::format("expected {} fields, found {}", columns.size(), fields.size()));
        rows.push_back(Row{line_no, std::move(fields)});
    }
    if (!header_seen) throw InputError(origin, 0, "missing header row");
    return rows;
}

std::vector<Row> read_file(const std::filesystem::path& path, std::span<const std::string_view> columns) {
    return parse(read_text(path), path.string(), columns);
}

void append_row(std::string& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += '\t';
        out += fields[i];
    }
    out += '\n';
}

void append_row(std::string& out, std::initializer_list<std::string_view> fields) {
    bool first = true;
    for (auto f : fields) {
        if (!first) out += '\t';
        first = false;
        out += f;
    }
    out += '\n';
}

}  // namespace jcaudit::tsv
