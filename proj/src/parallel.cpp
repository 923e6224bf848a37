#include "freqsynth/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace freqsynth {

int worker_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("FREQSYNTH_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1) n = std::min(n, cap);
        } catch (...) {
            // unparseable value: keep the hardware default
        }
    }
    return n;
}

void parallel_for_workers(int n, const std::function<void(int, int)>& f) {
    if (n <= 0) return;
    const int workers = std::min(worker_count(), n);
    if (workers == 1) {
        for (int i = 0; i < n; ++i) f(i, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const int lo = static_cast<int>(static_cast<long long>(n) * w / workers);
        const int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
        pool.emplace_back([&f, lo, hi, w] {
            for (int i = lo; i < hi; ++i) f(i, w);
        });
    }
    for (auto& t : pool) t.join();
}

void parallel_for(int n, const std::function<void(int)>& f) {
    parallel_for_workers(n, [&f](int i, int) { f(i); });
}

}  // namespace freqsynth
