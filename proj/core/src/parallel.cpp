#include "qbs/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qbs {

namespace {
std::atomic<int> g_max_threads{0};  // 0 means hardware concurrency
}

void set_max_threads(int n) {
    g_max_threads.store(n > 0 ? n : 0);
}

int max_threads() {
    const int v = g_max_threads.load();
    if (v > 0) return v;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn) {
    if (end <= begin) return;
    const std::size_t count = end - begin;
    const std::size_t workers =
        std::min<std::size_t>(count, static_cast<std::size_t>(max_threads()));
    if (workers <= 1) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{begin};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex guard;

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < end; i = next.fetch_add(1)) {
                if (failed.load(std::memory_order_relaxed)) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(guard);
                    if (!error) error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace qbs
