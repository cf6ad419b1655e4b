#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace torlab {

// Deterministic parallel loop: the index range is cut into contiguous blocks,
// one per worker, and each worker writes only to slots owned by its indices.
// The numeric work done for index i is identical for every thread count, so
// results are bit-reproducible as long as the caller reduces the slots in
// index order afterwards.
template <typename Body>
void parallel_for(int n, int threads, Body&& body) {
    if (n <= 0) return;
    threads = std::clamp(threads, 1, std::min(n, 64));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int k = 0; k < threads; ++k) {
        const int lo = static_cast<int>(static_cast<long long>(n) * k / threads);
        const int hi = static_cast<int>(static_cast<long long>(n) * (k + 1) / threads);
        pool.emplace_back([lo, hi, k, &body, &errors] {
            try {
                for (int i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(k)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace torlab
