#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qgs {

/// Worker cap: min(hardware, QGS_THREADS if set).  Thread count never
/// affects results; it only partitions index ranges.
inline int worker_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("QGS_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

/// Static-chunked parallel loop over [0, count).  body(begin, end, chunk_index)
/// runs on contiguous ranges; chunk boundaries depend only on `threads`, so
/// any per-chunk accumulators can be merged in chunk order deterministically.
inline void parallel_chunks(int count, int threads,
                            const std::function<void(int, int, int)>& body) {
    if (threads <= 0) threads = worker_threads();
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        body(0, count, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    int base = count / threads, rem = count % threads;
    int begin = 0;
    for (int c = 0; c < threads; ++c) {
        int len = base + (c < rem ? 1 : 0);
        int end = begin + len;
        pool.emplace_back(body, begin, end, c);
        begin = end;
    }
    for (auto& t : pool) t.join();
}

}  // namespace qgs
