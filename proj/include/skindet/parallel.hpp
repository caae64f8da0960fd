#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace skindet {

/// Worker count to use when the caller asks for 0 ("all cores").
inline unsigned resolve_workers(unsigned requested) noexcept
{
    if (requested != 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Splits [0, n) into at most `workers` contiguous chunks and calls fn(begin, end) on each.
/// Chunk boundaries depend only on n and workers. If chunks throw, the exception from the
/// lowest-indexed chunk is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn)
{
    if (n == 0) {
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(std::max(1u, workers), n);
    if (chunks == 1) {
        fn(std::size_t{0}, n);
        return;
    }

    std::vector<std::exception_ptr> errors(chunks);
    {
        std::vector<std::jthread> threads;
        threads.reserve(chunks - 1);
        auto run = [&](std::size_t c) {
            const std::size_t begin = n * c / chunks;
            const std::size_t end = n * (c + 1) / chunks;
            try {
                fn(begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        };
        for (std::size_t c = 1; c < chunks; ++c) {
            threads.emplace_back(run, c);
        }
        run(0);
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace skindet
