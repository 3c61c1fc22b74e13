#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace jcaudit {

/// Dense integer handle into one of the corpus tables. The tag keeps
/// journal, category and publication handles from being mixed up.
template <class Tag>
struct Handle {
    std::uint32_t value = 0;

    constexpr Handle() = default;
    constexpr explicit Handle(std::uint32_t v) : value(v) {}
    constexpr auto operator<=>(const Handle&) const = default;
};

struct JournalTag;
struct CategoryTag;
struct PublicationTag;
struct RefKeyTag;

using JournalIdx = Handle<JournalTag>;
using CategoryIdx = Handle<CategoryTag>;
using PublicationIdx = Handle<PublicationTag>;
using RefKeyIdx = Handle<RefKeyTag>;

/// Inclusive calendar-year interval.
struct YearRange {
    int first = 2010;
    int last = 2014;

    [[nodiscard]] constexpr bool contains(int year) const noexcept {
        return year >= first && year <= last;
    }
    constexpr bool operator==(const YearRange&) const = default;
};

/// Sparse (category, count) vector, sorted by category handle.
using CategoryCounts = std::vector<std::pair<CategoryIdx, std::uint64_t>>;

[[nodiscard]] std::uint64_t count_for(const CategoryCounts& counts, CategoryIdx c) noexcept;

}  // namespace jcaudit

template <class Tag>
struct std::hash<jcaudit::Handle<Tag>> {
    std::size_t operator()(jcaudit::Handle<Tag> h) const noexcept {
        return std::hash<std::uint32_t>{}(h.value);
    }
};
