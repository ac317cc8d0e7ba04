#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace parsum::detail {

/// Calls fn(k) for k in [0, count) on up to `threads` workers, each owning a
/// contiguous index range. fn must only write state owned by index k.
template <class Fn>
void parallel_for_index(std::size_t count, unsigned threads, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
    if (workers <= 1) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        pool.emplace_back([&fn, begin, end] {
            for (std::size_t k = begin; k < end; ++k) fn(k);
        });
    }
}

} // namespace parsum::detail
