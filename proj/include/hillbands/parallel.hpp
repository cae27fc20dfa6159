#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hillbands {

// Worker count: HILLBANDS_THREADS if set, else hardware concurrency.
inline int default_threads() {
    if (const char* env = std::getenv("HILLBANDS_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(h);
}

// Runs body(i) for i in [0,n). Results must be written by index, which keeps
// collection deterministic regardless of scheduling. The first exception is
// rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t n, Body&& body, int threads = 0) {
    if (threads <= 0) threads = default_threads();
    if (threads == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int nt = static_cast<int>(std::min<std::size_t>(threads, n));
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f, int threads = 0) {
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = f(i); }, threads);
    return out;
}

}  // namespace hillbands
