#pragma once

#include <cstddef>
#include <functional>

namespace hyperthick::parallel {

/// Worker cap: HYPERTHICK_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
int max_threads();

/// Overrides the worker cap for this process; 0 restores the default.
void set_max_threads(int threads);

/// Calls body(i) for i in [0, count), spreading contiguous chunks over up
/// to max_threads() workers. body must only write to slot i of its outputs;
/// callers reduce afterwards in index order so results do not depend on
/// the thread count.
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hyperthick::parallel
