#pragma once

#include <cstddef>
#include <functional>

namespace geonet {

// Worker count from GEONET_WORKERS, else std::thread::hardware_concurrency().
std::size_t default_worker_count();

// Resolves a requested count: 0 means default_worker_count().
std::size_t resolve_workers(std::size_t requested);

// Runs task(b) for every b in [0, batch_count) on up to `workers` threads.
// Batches are claimed dynamically; callers that need deterministic results
// write into per-batch slots and reduce in batch order afterwards.
void run_batches(std::size_t batch_count, std::size_t workers,
                 const std::function<void(std::size_t)>& task);

// Fixed batch schedule for per-source graph sweeps. Depends only on the item
// count, never on the worker count.
struct BatchPlan {
  std::size_t items = 0;
  std::size_t batch_size = 1;

  static BatchPlan for_items(std::size_t items, std::size_t max_batches = 64,
                             std::size_t min_batch = 32);

  std::size_t batch_count() const {
    return items == 0 ? 0 : (items + batch_size - 1) / batch_size;
  }
  std::size_t begin(std::size_t b) const { return b * batch_size; }
  std::size_t end(std::size_t b) const {
    const std::size_t e = (b + 1) * batch_size;
    return e < items ? e : items;
  }
};

}  // namespace geonet
