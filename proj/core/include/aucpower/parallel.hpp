#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace aucpower {

// 0 means "one per hardware thread".
unsigned resolve_thread_count(unsigned requested);

// Runs body(index, worker_state) for index in [0, count). Each worker gets its
// own default-constructed State. Indices are handed out in increasing order;
// once an index throws, higher indices are skipped and the exception of the
// lowest failing index is rethrown, so the reported error does not depend on
// the number of threads.
template <typename State, typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    threads = std::max(1u, std::min<unsigned>(resolve_thread_count(threads),
                                             static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_failure{std::numeric_limits<std::size_t>::max()};
    std::mutex failure_mutex;
    std::exception_ptr failure;

    auto worker = [&] {
        State state{};
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count || i > first_failure.load(std::memory_order_acquire)) return;
            try {
                body(i, state);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (i < first_failure.load(std::memory_order_relaxed)) {
                    first_failure.store(i, std::memory_order_release);
                    failure = std::current_exception();
                }
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace aucpower
