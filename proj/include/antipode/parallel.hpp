#pragma once

#include <cstddef>
#include <functional>

namespace antipode {

/// Worker count used by the data-parallel loops in the library. Defaults to
/// ANTIPODE_THREADS when set, otherwise 1.
std::size_t thread_count() noexcept;
void set_thread_count(std::size_t threads) noexcept;

/// Runs body(i) for i in [0, count). Blocks are claimed dynamically, so body
/// must write only to slots owned by i; callers reduce afterwards in index
/// order to keep results independent of the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace antipode
