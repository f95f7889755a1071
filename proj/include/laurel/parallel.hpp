#pragma once

// Deterministic fork/join over an index range.  The worker count comes from
// the LAUREL_WORKERS environment variable (unset or invalid: hardware
// concurrency).  Work is partitioned by index stride and every result is
// written to a caller-owned, index-addressed slot, so the assembled output
// never depends on thread scheduling.

#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace laurel {
namespace detail {

inline int worker_count() {
    if (const char* env = std::getenv("LAUREL_WORKERS")) {
        try {
            int v = std::stoi(env);
            if (v >= 1) return v;
        } catch (...) {
        }
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

/// Run fn(i) for every i in [0, n).  fn must confine its writes to state
/// owned by index i.  Exceptions are captured per index and the one with the
/// smallest index is rethrown after all threads join, so failure behavior is
/// as deterministic as success behavior.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(n));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&errs, &fn, w, n, workers]() {
            for (int i = w; i < n; i += workers) {
                try {
                    fn(i);
                } catch (...) {
                    errs[static_cast<std::size_t>(i)] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (int i = 0; i < n; ++i)
        if (errs[static_cast<std::size_t>(i)])
            std::rethrow_exception(errs[static_cast<std::size_t>(i)]);
}

}  // namespace detail
}  // namespace laurel
