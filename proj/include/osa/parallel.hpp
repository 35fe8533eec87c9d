#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace osa {

// Worker cap: min(hardware threads, OSA_THREADS, items).
inline int worker_count(std::size_t items) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("OSA_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap > 0 && static_cast<unsigned long>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    if (items < hw) hw = static_cast<unsigned>(items);
    return static_cast<int>(hw == 0 ? 1 : hw);
}

// Runs fn(0..count-1) across worker threads. Results must be written to
// index-addressed storage so output stays deterministic regardless of
// scheduling. The first exception is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    int workers = worker_count(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace osa
