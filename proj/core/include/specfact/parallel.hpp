#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace specfact {

/// Worker budget: hardware concurrency, capped by SPECFACT_THREADS when set
/// (0 means all cores).
inline int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("SPECFACT_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) hw = std::min(hw, cap);
    }
    return hw;
}

/// Runs fn(i) for i in [0, n) across the thread budget. Tasks must be
/// independent; results land wherever fn writes them.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(thread_budget(), n);
    if (workers <= 1 || n < 4) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) fn(i);
        });
    for (std::thread& t : pool) t.join();
}

} // namespace specfact
