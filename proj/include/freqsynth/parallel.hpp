#pragma once

#include <functional>

namespace freqsynth {

/// Worker count: FREQSYNTH_THREADS caps it, hardware concurrency otherwise.
int worker_count();

/// Runs f(i) for i in [0, n) on up to worker_count() threads. Work is split
/// into static index ranges, so any per-index output slot is written exactly
/// once; callers own determinism by reducing results in index order.
void parallel_for(int n, const std::function<void(int)>& f);

/// Same, but hands each worker its worker id (for per-worker scratch state).
void parallel_for_workers(int n, const std::function<void(int /*index*/, int /*worker*/)>& f);

}  // namespace freqsynth
