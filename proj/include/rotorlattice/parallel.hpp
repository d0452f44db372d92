#pragma once

#include <cstdint>
#include <functional>

namespace rotor {

// Worker count: explicit request > 0 wins, else ROTORLATTICE_THREADS,
// else hardware concurrency.
int resolve_threads(int requested);

// Runs fn(i) for i in [0, n). Items are claimed from a shared counter, so the
// assignment of items to workers is nondeterministic; callers that accumulate
// must do so per item (or per fixed block of items) and reduce in index order.
void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t)>& fn);

}  // namespace rotor
