#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tindex {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Static block partition of [0, n). Each item writes only its own output
// slot, so results are identical to the sequential order for any thread
// count. The first worker exception is rethrown on the calling thread.
template <typename Fn>
void parallel_for(long n, int threads, Fn&& fn) {
    int nt = resolve_threads(threads);
    if (nt <= 1 || n < 2 * nt) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    long chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        long lo = t * chunk;
        long hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn, &failure, &failure_mutex] {
            try {
                for (long i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace tindex
