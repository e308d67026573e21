#include "mlfrac/detail/parallel.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

namespace mlfrac::detail {

std::size_t thread_budget() {
    if (const char* env = std::getenv("MLFRAC_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    std::size_t hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    std::size_t nt = std::min(thread_budget(), n);
    if (nt <= 1 || n < 4) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::mutex guard;
    std::exception_ptr err;
    for (std::size_t tid = 0; tid < nt; ++tid) {
        pool.emplace_back([&, tid] {
            std::size_t lo = n * tid / nt;
            std::size_t hi = n * (tid + 1) / nt;
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(guard);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace mlfrac::detail
