#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace chaoskit {

/// Resolves a requested worker count; 0 means hardware concurrency.
inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on `workers` threads with a static block
/// partition. The body must only write to slots owned by i; any result that is
/// later reduced must be reduced in index order so outcomes do not depend on
/// the worker count. The first exception thrown by a worker is rethrown.
inline void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
    workers = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::size_t lo = w * chunk;
                const std::size_t hi = std::min(count, lo + chunk);
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Like parallel_for, but hands each worker its whole block [lo, hi) so it can
/// keep scratch state across indices.
inline void parallel_blocks(std::size_t count, unsigned workers,
                            const std::function<void(std::size_t, std::size_t)>& body) {
    workers = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(count, 1));
    const std::size_t chunk = (count + workers - 1) / std::max(workers, 1u);
    parallel_for(workers, workers, [&](std::size_t w) {
        const std::size_t lo = std::min(count, w * chunk);
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo < hi) body(lo, hi);
    });
}

/// Pairwise (cascade) summation with a fixed association order.
template <class T>
T pairwise_reduce(std::span<const T> values) {
    if (values.size() <= 8) {
        T s{};
        for (const T& v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_reduce(values.first(half)) + pairwise_reduce(values.subspan(half));
}

}  // namespace chaoskit
