#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace trcalc {

// Worker count: TRCALC_THREADS if set to a positive integer, else the hardware concurrency.
inline int thread_budget()
{
    if (const char* s = std::getenv("TRCALC_THREADS")) {
        try {
            int n = std::stoi(s);
            if (n > 0) return n;
        } catch (...) {
        }
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? static_cast<int>(h) : 1;
}

// Runs body(i) for i in [0, n); rethrows the first exception after all workers stop.
template <class F>
void parallel_for(int n, F&& body, int threads = thread_budget())
{
    if (n <= 0) return;
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace trcalc
