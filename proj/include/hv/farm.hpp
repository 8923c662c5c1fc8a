#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace hv {

/// Runs fn(trial_index) for every index in [0, trials), striding indices
/// round-robin over the workers. Trial seeds derive from the index, and
/// results land in index-addressed slots, so the thread count never changes
/// any output.
template <class Fn>
void parallel_trials(int64_t trials, int threads, Fn&& fn) {
    if (threads <= 1 || trials < 2) {
        for (int64_t i = 0; i < trials; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(size_t(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&fn, w, trials, threads] {
            for (int64_t i = w; i < trials; i += threads) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace hv
