#include "indicatrix/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace indicatrix {

std::size_t thread_count() {
    std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("INDICATRIX_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) hw = std::min<std::size_t>(hw, static_cast<std::size_t>(cap));
    }
    return hw;
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t chunks = std::min<std::size_t>(n, 64);
    const std::size_t per = (n + chunks - 1) / chunks;
    const std::size_t workers = std::min(thread_count(), chunks);

    if (workers == 1) {
        for (std::size_t ci = 0; ci < chunks; ++ci) {
            std::size_t lo = ci * per, hi = std::min(n, lo + per);
            if (lo < hi) fn(ci, lo, hi);
        }
        return;
    }

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t ci = w; ci < chunks; ci += workers) {
                std::size_t lo = ci * per, hi = std::min(n, lo + per);
                if (lo < hi) fn(ci, lo, hi);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace indicatrix
