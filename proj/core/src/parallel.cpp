#include "curvedepth/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace curvedepth {

unsigned worker_count() {
    unsigned n = 0;
    if (const char* env = std::getenv("CURVE_DEPTH_THREADS")) {
        try {
            n = static_cast<unsigned>(std::stoul(env));
        } catch (...) {
            n = 0;
        }
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    // Exceptions are collected and the lowest-index one rethrown after every
    // task has run, so the behavior is schedule-independent.
    std::mutex error_mutex;
    std::size_t error_index = n;
    std::exception_ptr error;
    auto guarded = [&](std::size_t i) {
        try {
            fn(i);
        } catch (...) {
            const std::lock_guard lock(error_mutex);
            if (i < error_index) {
                error_index = i;
                error = std::current_exception();
            }
        }
    };

    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) guarded(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) guarded(i);
            });
        }
        for (std::thread& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace curvedepth
