#include "trollcast/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace trollcast {

namespace {
std::atomic<int> g_max_threads{0};  // 0 = use hardware_concurrency

int effective_threads() {
    int n = g_max_threads.load();
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, n);
}
}  // namespace

void set_max_threads(int n) { g_max_threads.store(n); }

int max_threads() { return effective_threads(); }

void parallel_chunks(size_t n, const std::function<void(size_t, size_t)>& fn) {
    if (n == 0) return;
    size_t workers = std::min<size_t>(static_cast<size_t>(effective_threads()), n);
    if (workers <= 1) {
        fn(0, n);
        return;
    }
    size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> threads;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (size_t w = 0; w < workers; ++w) {
        size_t begin = w * chunk;
        size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    parallel_chunks(n, [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) fn(i);
    });
}

}  // namespace trollcast
