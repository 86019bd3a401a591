#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace penosc {

/// PENOSC_THREADS if set and positive, else std::thread::hardware_concurrency(), at least 1.
[[nodiscard]] int default_thread_count();

/// Splits [0, count) into contiguous chunks and calls fn(begin, end, worker) on each,
/// one thread per chunk. The first exception thrown by any chunk is rethrown.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, int threads = default_thread_count()) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
    if (workers <= 1) {
        if (count > 0) {
            fn(std::size_t{0}, count, 0);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&, begin, end, w] {
            try {
                fn(begin, end, static_cast<int>(w));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace penosc
