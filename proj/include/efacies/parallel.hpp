#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace efacies::detail {

/// Calls fn(lo, hi) over contiguous chunks of [0, n), one chunk per worker.
/// Chunks are disjoint, so results written per index do not depend on scheduling.
/// `grain` is the smallest chunk worth a thread.
template <class Fn>
void parallel_chunks(std::size_t n, std::size_t grain, Fn&& fn) {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, std::max<std::size_t>(1, n / std::max<std::size_t>(1, grain)));
    if (workers <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = n * w / workers;
            const std::size_t hi = n * (w + 1) / workers;
            pool.emplace_back([&, lo, hi] {
                try {
                    fn(lo, hi);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace efacies::detail
