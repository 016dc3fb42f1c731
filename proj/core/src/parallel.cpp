#include "qwr/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace qwr {

std::size_t thread_count() {
    const char *env = std::getenv("QWR_THREADS");
    if (env == nullptr) return 1;
    std::size_t requested = 1;
    try {
        requested = std::stoul(env);
    } catch (const std::exception &) {
        return 1;
    }
    const std::size_t hw = std::max(1U, std::thread::hardware_concurrency());
    return std::clamp<std::size_t>(requested, 1, hw);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn) {
    const std::size_t workers = std::min(thread_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (auto i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                failures[w] = std::current_exception();
                next.store(count);
            }
        });
    }
    for (auto &t : pool) t.join();
    for (auto &f : failures) {
        if (f) std::rethrow_exception(f);
    }
}

}  // namespace qwr
