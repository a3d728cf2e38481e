// parallel.hpp - minimal fork-join helper for the pure per-row/per-column
// stages. COHERENCE_FORGE_THREADS caps the worker count (default: hardware
// concurrency). Bodies must write disjoint outputs; results are identical
// for any worker count.

#pragma once

#include <cstddef>
#include <functional>

namespace cforge {

std::size_t worker_count();

// Splits [0, count) into contiguous chunks, one per worker.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace cforge
