#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace percaniso {

inline int effective_workers(int workers)
{
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    return workers < 1 ? 1 : workers;
}

// Splits [0, trials) into contiguous chunks, one worker thread each, and
// runs body(worker, trial). Results must be accumulated per-worker and
// merged by the caller; chunking never changes which trial seeds are used.
inline void for_each_trial(std::int64_t trials, int workers,
                           const std::function<void(int, std::int64_t)>& body)
{
    workers = effective_workers(workers);
    if (workers == 1 || trials < 2 * workers) {
        for (std::int64_t t = 0; t < trials; ++t) body(0, t);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min(trials, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, w, lo, hi] {
            for (std::int64_t t = lo; t < hi; ++t) body(w, t);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace percaniso
