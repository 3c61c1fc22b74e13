#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace jcaudit::detail {

inline unsigned effective_threads(unsigned requested, std::size_t work_items) {
    unsigned n = std::max(1u, requested);
    if (work_items < n) n = static_cast<unsigned>(std::max<std::size_t>(1, work_items));
    return n;
}

/// Splits [0, n) into `chunks` contiguous ranges and runs fn(chunk, begin, end)
/// for each on its own thread. Exceptions are rethrown on the caller.
template <class Fn>
void for_each_chunk(std::size_t n, unsigned chunks, Fn&& fn) {
    if (chunks <= 1) {
        fn(0u, std::size_t{0}, n);
        return;
    }
    std::vector<std::exception_ptr> errors(chunks);
    {
        std::vector<std::jthread> workers;
        workers.reserve(chunks);
        for (unsigned k = 0; k < chunks; ++k) {
            const std::size_t begin = n * k / chunks;
            const std::size_t end = n * (k + 1) / chunks;
            workers.emplace_back([&, k, begin, end] {
                try {
                    fn(k, begin, end);
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace jcaudit::detail
