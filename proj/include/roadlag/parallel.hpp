// parallel.hpp -- deterministic work-sharing over index spaces.
//
// Both helpers guarantee results independent of the number of worker
// threads: maps write by index, searches return the minimal hit.

#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace roadlag {

inline int effective_jobs(int jobs) { return jobs < 1 ? 1 : jobs; }

namespace detail {

class FirstException {
public:
    void capture() {
        std::lock_guard<std::mutex> lock(mu_);
        if (!ptr_) ptr_ = std::current_exception();
    }
    void rethrow_if_any() {
        if (ptr_) std::rethrow_exception(ptr_);
    }

private:
    std::mutex mu_;
    std::exception_ptr ptr_;
};

}  // namespace detail

/// Evaluate fn(i) for every i in [0, n), on `jobs` threads, returning the
/// results in index order.  R must be default constructible; fn must be pure.
template <typename R, typename Fn>
std::vector<R> parallel_map_index(std::uint64_t n, int jobs, Fn&& fn) {
    std::vector<R> out(n);
    int j = effective_jobs(jobs);
    if (j == 1 || n <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    detail::FirstException err;
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(j));
    for (int t = 0; t < j; ++t) {
        workers.emplace_back([&, t] {
            try {
                for (std::uint64_t i = static_cast<std::uint64_t>(t); i < n;
                     i += static_cast<std::uint64_t>(j))
                    out[i] = fn(i);
            } catch (...) {
                err.capture();
            }
        });
    }
    for (auto& w : workers) w.join();
    err.rethrow_if_any();
    return out;
}

/// Minimal index in [0, n) satisfying pred, or nullopt.  Threads skip indices
/// above the best hit found so far, so the result equals the sequential scan.
template <typename Pred>
std::optional<std::uint64_t> parallel_find_first(std::uint64_t n, int jobs, Pred&& pred) {
    int j = effective_jobs(jobs);
    if (j == 1 || n <= 1) {
        for (std::uint64_t i = 0; i < n; ++i)
            if (pred(i)) return i;
        return std::nullopt;
    }
    std::atomic<std::uint64_t> best{n};
    detail::FirstException err;
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(j));
    for (int t = 0; t < j; ++t) {
        workers.emplace_back([&, t] {
            try {
                for (std::uint64_t i = static_cast<std::uint64_t>(t); i < n;
                     i += static_cast<std::uint64_t>(j)) {
                    if (i >= best.load(std::memory_order_relaxed)) continue;
                    if (!pred(i)) continue;
                    std::uint64_t cur = best.load(std::memory_order_relaxed);
                    while (i < cur &&
                           !best.compare_exchange_weak(cur, i, std::memory_order_relaxed)) {
                    }
                }
            } catch (...) {
                err.capture();
            }
        });
    }
    for (auto& w : workers) w.join();
    err.rethrow_if_any();
    std::uint64_t b = best.load();
    if (b == n) return std::nullopt;
    return b;
}

}  // namespace roadlag
