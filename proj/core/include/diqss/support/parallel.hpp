#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace diqss::support {

/// Worker-thread cap: DIQSS_THREADS when set (>=1), else hardware concurrency.
int thread_cap();

/// Runs fn(block_index) for block_index in [0, num_blocks) across worker
/// threads and returns the results indexed by block. Callers merge in block
/// order, so the combined result is independent of the thread schedule.
template <typename Result>
std::vector<Result> parallel_blocks(int num_blocks,
                                    const std::function<Result(int)>& fn) {
  std::vector<Result> results(num_blocks);
  const int workers = std::min(thread_cap(), std::max(1, num_blocks));
  if (workers <= 1) {
    for (int b = 0; b < num_blocks; ++b) results[b] = fn(b);
    return results;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int b = next.fetch_add(1); b < num_blocks; b = next.fetch_add(1)) {
        results[b] = fn(b);
      }
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace diqss::support
