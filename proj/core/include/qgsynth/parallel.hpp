#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qgsynth {

/// Run fn(i) for i in [0, count) across worker threads. Work items must be
/// independent; results keyed by index stay deterministic regardless of the
/// execution order. The first exception is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned max_threads = 0) {
    if (count == 0) return;
    unsigned hw = max_threads > 0 ? max_threads : std::thread::hardware_concurrency();
    hw = std::max(1u, std::min<unsigned>(hw, unsigned(count)));
    if (hw == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::vector<std::thread> workers;
    workers.reserve(hw);
    for (unsigned t = 0; t < hw; ++t) {
        workers.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace qgsynth
