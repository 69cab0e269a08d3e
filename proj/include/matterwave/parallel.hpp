#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <span>
#include <thread>
#include <vector>

namespace mw {

namespace detail {
inline std::atomic<unsigned>& thread_cap()
{
    static std::atomic<unsigned> cap{1};
    return cap;
}
} // namespace detail

/// Upper bound on worker threads used by grid loops. 0 means hardware concurrency.
inline void set_max_threads(unsigned n)
{
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    detail::thread_cap().store(n);
}

[[nodiscard]] inline unsigned max_threads() { return detail::thread_cap().load(); }

/// Runs fn(i) for i in [0, count). Every index is written by exactly one
/// worker, so results do not depend on the thread count.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn)
{
    constexpr std::size_t kMinChunk = 4096;
    const std::size_t workers = std::min<std::size_t>(max_threads(), (count + kMinChunk - 1) / kMinChunk);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
}

/// Fixed-order pairwise sum.
[[nodiscard]] inline double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

} // namespace mw
