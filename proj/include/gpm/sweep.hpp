#pragma once

// Batch evaluation over an index range.  Each item derives everything from its
// index (typically a seed), so the parallel and serial paths yield identical
// results; the serial path is kept as the reference for tests and benchmarks.

#include <cstddef>
#include <vector>

namespace gpm {

template <typename Fn>
auto run_sweep(std::size_t count, Fn&& fn, bool parallel = true)
    -> std::vector<decltype(fn(std::size_t{0}))> {
    using Result = decltype(fn(std::size_t{0}));
    std::vector<Result> results(count);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            results[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            results[i] = fn(i);
        }
    }
    return results;
}

}  // namespace gpm
