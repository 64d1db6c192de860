#include "geonet/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace geonet {

std::size_t default_worker_count() {
  if (const char* env = std::getenv("GEONET_WORKERS")) {
    std::size_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value > 0) return value;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::size_t resolve_workers(std::size_t requested) {
  return requested == 0 ? default_worker_count() : requested;
}

void run_batches(std::size_t batch_count, std::size_t workers,
                 const std::function<void(std::size_t)>& task) {
  workers = std::min(resolve_workers(workers), batch_count);
  if (workers <= 1) {
    for (std::size_t b = 0; b < batch_count; ++b) task(b);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= batch_count) return;
      try {
        task(b);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = batch_count;
        return;
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

BatchPlan BatchPlan::for_items(std::size_t items, std::size_t max_batches,
                               std::size_t min_batch) {
  BatchPlan plan;
  plan.items = items;
  const std::size_t even = (items + max_batches - 1) / std::max<std::size_t>(max_batches, 1);
  plan.batch_size = std::max({even, min_batch, std::size_t{1}});
  return plan;
}

}  // namespace geonet
