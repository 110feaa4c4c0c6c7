#pragma once

#include <functional>

namespace tfm {

// Worker count: TFM_SYNTH_THREADS if set and positive, else hardware concurrency (at least 1).
int worker_count();

// Runs fn(k) for k in [0, n) on up to worker_count() threads. The first
// exception thrown by any task is rethrown after all workers stop.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace tfm
