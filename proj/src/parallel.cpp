#include "pdisco/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace pdisco {

std::size_t chunk_count(std::size_t n, std::size_t grain) {
    if (n == 0) return 0;
    grain = std::max<std::size_t>(grain, 1);
    return (n + grain - 1) / grain;
}

void parallel_for_chunks(std::size_t n, std::size_t grain, int threads,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    grain = std::max<std::size_t>(grain, 1);
    const std::size_t n_chunks = chunk_count(n, grain);

    auto run_chunk = [&](std::size_t c) {
        const std::size_t begin = c * grain;
        const std::size_t end = std::min(begin + grain, n);
        fn(begin, end, c);
    };

    if (threads <= 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
        return;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            run_chunk(c);
        }
    };

    const int n_workers = static_cast<int>(std::min<std::size_t>(threads, n_chunks));
    std::vector<std::thread> pool;
    pool.reserve(n_workers - 1);
    for (int i = 1; i < n_workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace pdisco
