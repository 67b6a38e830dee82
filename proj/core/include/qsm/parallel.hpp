// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace qsm {

// Run fn(0..count-1), possibly on several threads. Each index must write only
// its own output slot; reductions happen after the loop in index order, so
// results are independent of the thread count. Honors QSM_THREADS (0 or 1
// forces serial). Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace qsm
