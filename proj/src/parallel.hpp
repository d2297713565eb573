#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace phasekit::detail {

inline constexpr std::uint64_t kBlockSize = 8192;

/// Run fn(block_index, first_trial, last_trial) over [0, total) split into
/// kBlockSize blocks.  Block indices double as RNG stream ids, so results
/// are independent of the worker count as long as fn writes into
/// per-block slots.
template <typename Fn>
void run_blocks(std::uint64_t total, int threads, Fn&& fn) {
    const std::uint64_t blocks = (total + kBlockSize - 1) / kBlockSize;
    if (threads <= 1 || blocks <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b)
            fn(b, b * kBlockSize, std::min(total, (b + 1) * kBlockSize));
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1))
            fn(b, b * kBlockSize, std::min(total, (b + 1) * kBlockSize));
    };
    std::vector<std::thread> pool;
    const int n = static_cast<int>(std::min<std::uint64_t>(threads, blocks));
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace phasekit::detail
