#include "dftlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

namespace dftlab {

namespace {

std::atomic<int> g_budget{0};  // 0 = not yet resolved

int detect_budget() {
  if (const char* env = std::getenv("DFTLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? static_cast<int>(hw) : 1;
}

}  // namespace

int thread_budget() {
  int current = g_budget.load(std::memory_order_relaxed);
  if (current == 0) {
    current = detect_budget();
    g_budget.store(current, std::memory_order_relaxed);
  }
  return current;
}

void set_thread_budget(int n) {
  if (n < 1) throw std::domain_error("set_thread_budget: need at least one thread");
  g_budget.store(n, std::memory_order_relaxed);
}

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  const int threads = static_cast<int>(
      std::min<std::int64_t>(thread_budget(), count));
  if (threads <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  // Contiguous chunks; results land in caller-owned per-index slots, so the
  // split cannot influence any reduction done afterwards in index order.
  const std::int64_t chunk = (count + threads - 1) / threads;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    const std::int64_t lo = std::int64_t(t) * chunk;
    const std::int64_t hi = std::min(count, lo + chunk);
    pool.emplace_back([&, t, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace dftlab
