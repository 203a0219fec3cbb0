#include "dsom/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dsom::parallel {

namespace {
std::atomic<unsigned> g_max_threads{0};

unsigned hardware_default() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}
}  // namespace

void set_max_threads(unsigned n) { g_max_threads.store(n); }

unsigned max_threads() {
    unsigned cap = g_max_threads.load();
    return cap == 0 ? hardware_default() : cap;
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
    if (begin >= end) return;
    const std::size_t range = end - begin;
    std::size_t workers = max_threads();
    if (workers > range) workers = range;
    if (workers <= 1) {
        fn(begin, end);
        return;
    }

    const std::size_t chunk = (range + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex err_mutex;

    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = begin + w * chunk;
        if (lo >= end) break;
        const std::size_t hi = lo + chunk < end ? lo + chunk : end;
        pool.emplace_back([&, lo, hi] {
            try {
                fn(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dsom::parallel
