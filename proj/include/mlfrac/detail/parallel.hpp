#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace mlfrac::detail {

// Thread-count cap: MLFRAC_THREADS environment variable, else hardware.
std::size_t thread_budget();

// Static partition of [0, n) across threads. Each index is visited exactly
// once; callers write to disjoint slots so results are independent of
// scheduling, and any final reduction runs in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace mlfrac::detail
