#pragma once

#include <cstdint>
#include <functional>

namespace surfends {

/// Worker count: hardware concurrency, capped by SURFACE_ENDS_THREADS when set.
std::int32_t worker_count();

/// Runs body(i) for i in [0, n). Work is split into contiguous blocks so the
/// result is independent of scheduling as long as body writes only slot i.
/// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

}  // namespace surfends
