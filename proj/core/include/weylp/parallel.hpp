#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace weylp {

// Runs fn(chunk_index) for every chunk_index in [0, chunk_count) using up to
// `workers` threads. Chunks are claimed from a shared atomic counter, so the
// assignment of chunks to threads is nondeterministic -- callers must make
// each chunk's work independent of which thread runs it and merge results by
// chunk index. The first exception thrown by any chunk is rethrown after all
// threads join.
inline void run_chunks(std::uint64_t chunk_count, unsigned workers,
                       const std::function<void(std::uint64_t)>& fn) {
    if (chunk_count == 0) return;
    if (workers == 0) workers = 1;
    if (workers > chunk_count) workers = static_cast<unsigned>(chunk_count);

    if (workers == 1) {
        for (std::uint64_t c = 0; c < chunk_count; ++c) fn(c);
        return;
    }

    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto body = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= chunk_count) break;
            try {
                fn(c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace weylp
