#pragma once

#include <cstddef>
#include <functional>

namespace qno {

// Runs fn(i) for i in [0, count), possibly across threads. Each index writes
// only its own slot, so results are assembled in input order and the output is
// identical to a sequential run. Thread count is capped by the QNO_THREADS
// environment variable (0 or 1 disables threading). The first exception thrown
// by any index is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace qno
