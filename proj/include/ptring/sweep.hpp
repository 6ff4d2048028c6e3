// sweep.hpp — bounded worker pool for independent grid points with a
// deterministic by-index merge.
#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ptring {

/// Runs fn(i) for i in [0, count) on `jobs` worker threads (serial when
/// jobs <= 1). fn must write its result into a preallocated slot keyed by i
/// so the merged output is independent of scheduling. The first exception,
/// if any, is rethrown after all workers drain.
template <typename Fn>
void parallel_for_index(std::size_t count, int jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    const int n_workers = static_cast<int>(
        std::min<std::size_t>(count, static_cast<std::size_t>(jobs)));
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ptring
