#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace seedbs {

// Maps fn(i) over [0, n) across `workers` threads in contiguous chunks.
// Callers write results into preallocated index-addressed storage, so the
// outcome does not depend on scheduling or worker count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
    if (workers <= 1 || n < 2 * static_cast<std::size_t>(workers)) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = static_cast<std::size_t>(w) * chunk;
        if (begin >= n) break;
        const std::size_t end = std::min(n, begin + chunk);
        threads.emplace_back([begin, end, &fn] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

} // namespace seedbs
