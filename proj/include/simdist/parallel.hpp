#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace simdist {

/// Worker count for parallel sections: hardware concurrency capped by the
/// SIMDIST_THREADS environment variable and by the task count.
inline unsigned worker_count(std::size_t tasks) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("SIMDIST_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) hw = static_cast<unsigned>(v);
    }
    if (tasks < hw) hw = static_cast<unsigned>(tasks);
    return hw == 0 ? 1 : hw;
}

/// Runs f(i) for i in [0, count). Results must be written to
/// pre-allocated slots so the outcome is independent of scheduling.
/// Exceptions from workers are rethrown in the calling thread.
template <typename F>
void parallel_for(std::size_t count, F&& f) {
    if (count == 0) return;
    unsigned workers = worker_count(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= count) break;
                    f(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace simdist
