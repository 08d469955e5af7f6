#pragma once

#include <cstddef>
#include <functional>

namespace mpe {

/// Runs body(i) for i in [0, count) on up to `threads` workers
/// (0 = hardware concurrency). Iterations must be independent; the first
/// exception thrown by any iteration is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads = 0);

}  // namespace mpe
