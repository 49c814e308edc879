// parallel.hpp — deterministic indexed parallel loop.

#pragma once

#include <functional>

namespace spinchaos {

// Runs body(0), ..., body(n-1) on up to `workers` threads. Callers write
// results into index-addressed slots and reduce in index order, so the
// outcome does not depend on scheduling. If bodies throw, the exception
// from the lowest index is rethrown after all workers finish.
void parallel_for(int n, int workers, const std::function<void(int)>& body);

// Hardware concurrency, at least 1.
int default_worker_count();

}  // namespace spinchaos
