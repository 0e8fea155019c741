#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dipole_noise {

int resolve_workers(int requested) {
  int cap = 0;
  if (const char* env = std::getenv(kThreadsEnvVar)) {
    cap = std::atoi(env);
  }
  int workers = requested;
  if (workers <= 0) {
    workers = cap > 0 ? cap
                      : static_cast<int>(std::thread::hardware_concurrency());
  } else if (cap > 0) {
    workers = std::min(workers, cap);
  }
  return std::max(1, workers);
}

void parallel_for_chunks(std::size_t num_chunks, int workers,
                         const std::function<void(std::size_t)>& task) {
  const auto threads = static_cast<std::size_t>(
      std::min<std::size_t>(std::max(1, workers), std::max<std::size_t>(1, num_chunks)));
  if (threads <= 1) {
    for (std::size_t c = 0; c < num_chunks; ++c) task(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= num_chunks) return;
      try {
        task(c);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(num_chunks);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace dipole_noise
