#pragma once
// Deterministic worker-pool helpers.  Block boundaries depend only on the
// problem size, never on the worker count, and per-block results are
// combined in block order, so any worker count produces identical output
// (bit-for-bit, including floating point).

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "ntcore.hpp"

namespace p2lab {

// Evaluate fn(block_index) for block_index in [0, n_blocks) and return the
// results in index order.
template <class T, class BlockFn>
std::vector<T> parallel_blocks(u64 n_blocks, unsigned workers, BlockFn fn) {
    std::vector<T> out(n_blocks);
    if (workers <= 1 || n_blocks <= 1) {
        for (u64 b = 0; b < n_blocks; ++b) out[b] = fn(b);
        return out;
    }
    unsigned nthreads = (unsigned)std::min<u64>(workers, n_blocks);
    std::atomic<u64> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned w = 0; w < nthreads; ++w) {
        pool.emplace_back([&] {
            try {
                for (u64 b = next.fetch_add(1); b < n_blocks;
                     b = next.fetch_add(1))
                    out[b] = fn(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return out;
}

// Map [lo, hi) in fixed-size blocks and reduce the per-block results in
// block order: combine(acc, block_result).
template <class T, class MapFn, class CombineFn>
T parallel_map_reduce(u64 lo, u64 hi, u64 block_size, unsigned workers, T init,
                      MapFn map_block, CombineFn combine) {
    if (hi <= lo) return init;
    u64 n_blocks = (hi - lo + block_size - 1) / block_size;
    auto results = parallel_blocks<T>(n_blocks, workers, [&](u64 b) {
        u64 blo = lo + b * block_size;
        u64 bhi = std::min(hi, blo + block_size);
        return map_block(blo, bhi);
    });
    T acc = init;
    for (auto& r : results) acc = combine(acc, r);
    return acc;
}

}  // namespace p2lab
