#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace lom {

/// Runs fn(begin..end) over `jobs` workers in contiguous chunks. Results must
/// be written to disjoint, preallocated slots; chunk boundaries are a pure
/// function of (n, jobs) so outputs do not depend on scheduling.
/// jobs <= 0 means hardware concurrency.
inline void parallel_for(int64_t n, int jobs, const std::function<void(int64_t, int64_t)>& fn) {
    if (n <= 0) return;
    int workers = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int64_t>(workers, n));
    if (workers == 1) {
        fn(0, n);
        return;
    }
    int64_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        int64_t lo = w * chunk;
        int64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace lom
