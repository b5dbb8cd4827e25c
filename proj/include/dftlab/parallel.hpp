#pragma once

#include <cstdint>
#include <functional>

namespace dftlab {

/// Worker threads used by parallel_for.  Defaults to the DFTLAB_THREADS
/// environment variable when set, else hardware concurrency.
int thread_budget();
void set_thread_budget(int n);  // n >= 1

/// Runs fn(i) for i in [0, count), split into contiguous chunks across the
/// thread budget.  fn must confine its writes to slot i of storage the caller
/// preallocated; any reduction happens afterwards, in index order, so results
/// cannot depend on the thread count.  Exceptions from workers are rethrown.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn);

}  // namespace dftlab
