#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace wiener::detail {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Results land in a
/// slot vector indexed by i, so the reduction order downstream is
/// deterministic regardless of thread count.
template <class T>
std::vector<T> parallel_map(std::size_t n, int threads, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(n);
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::size_t nworkers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (std::size_t w = 0; w < nworkers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += nworkers) out[i] = fn(i);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace wiener::detail
