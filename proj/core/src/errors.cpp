#include "jcaudit/errors.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "jcaudit/types.hpp"

namespace jcaudit {

InputError::InputError(const std::string& file, std::size_t line, const std::string& reason)
    : Error(line ? fmt::format("{}:{}: {}", file, line, reason) : fmt::format("{}: {}", file, reason)) {}

UnknownKeyError::UnknownKeyError(const std::string& kind, const std::string& key)
    : InputError(fmt::format("unknown {} '{}'", kind, key)) {}

MissingReferencesError::MissingReferencesError()
    : InputError("bibliographic coupling requires reference data (references.tsv)") {}

std::uint64_t count_for(const CategoryCounts& counts, CategoryIdx c) noexcept {
    auto it = std::lower_bound(counts.begin(), counts.end(), c,
                               [](const auto& e, CategoryIdx key) { return e.first < key; });
    return it != counts.end() && it->first == c ? it->second : 0;
}

}  // namespace jcaudit
