#pragma once

#include <cstddef>
#include <functional>

namespace latfol {

/// Runs fn(0..n-1) on `threads` workers.  Tasks write to disjoint slots, so
/// results do not depend on the schedule.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace latfol
