#pragma once

#include <cstddef>
#include <functional>

namespace rslab {

// Runs fn(i) for i in [0, count) over `threads` workers. Exceptions are
// rethrown on the calling thread (the lowest failing index wins).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace rslab
