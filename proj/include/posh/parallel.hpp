#pragma once

#include <cstddef>
#include <functional>

namespace posh {

/// Worker count: POSH_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Calls body(i) for i in [0, count). Work items must be independent; the
/// call order across threads is unspecified. The first exception thrown by
/// a work item is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace posh
