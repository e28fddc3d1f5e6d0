#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace swarmshop {

// Maps the conventional "0 means auto" worker count to a concrete one.
inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(0) .. fn(n-1) across up to n_workers threads. Items are claimed
// from a shared counter, so callers must not rely on execution order; any
// result that should be reproducible has to be derived from the item index
// alone. The first exception thrown by fn stops the loop and is rethrown on
// the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, int n_workers, Fn&& fn) {
    const int workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(resolve_workers(n_workers)), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto drain = [&] {
        try {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                fn(i);
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(n);
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int t = 1; t < workers; ++t) pool.emplace_back(drain);
    drain();
    for (auto& thread : pool) thread.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace swarmshop
