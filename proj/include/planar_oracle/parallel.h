#pragma once

#include <cstddef>
#include <functional>

namespace planar_oracle {

// Worker count: hardware concurrency, capped by PLANAR_ORACLE_THREADS.
std::size_t thread_count();

// Runs body(i) for i in [0, n). Work is handed out in index order; the
// first exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace planar_oracle
