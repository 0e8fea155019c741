#pragma once

#include <cstddef>
#include <functional>

namespace dipole_noise {

/// Environment variable that caps worker threads for Monte Carlo kernels.
inline constexpr const char* kThreadsEnvVar = "DIPOLE_NOISE_THREADS";

/// Resolves a requested worker count: positive values are used as given,
/// 0 means "DIPOLE_NOISE_THREADS if set, else hardware concurrency". The
/// environment variable also caps explicit requests.
int resolve_workers(int requested);

/// Runs task(chunk) for chunk in [0, num_chunks) on up to `workers` threads.
/// Chunks are independent; callers reduce results in chunk order so the
/// outcome does not depend on the worker count. The first exception thrown
/// by any task is rethrown on the calling thread.
void parallel_for_chunks(std::size_t num_chunks, int workers,
                         const std::function<void(std::size_t)>& task);

}  // namespace dipole_noise
