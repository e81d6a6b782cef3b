#pragma once

#include <cstddef>
#include <functional>

namespace campsim {

/// Worker count for a requested parallelism; 0 means hardware concurrency.
std::size_t resolve_workers(int requested) noexcept;

/// Runs fn(0..n-1) on up to `workers` threads. Every index runs even if some
/// throw; the exception of the lowest failing index is rethrown afterwards.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

}  // namespace campsim
