#ifndef QBS_PARALLEL_HPP
#define QBS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace qbs {

/// Caps the number of worker threads used by parallel kernels.
/// n <= 0 resets to the hardware concurrency.
void set_max_threads(int n);
int max_threads();

/// Runs fn(i) for i in [begin, end) across up to max_threads() workers.
/// Iterations must write disjoint state; results are then identical to
/// the serial order regardless of thread count.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& fn);

}  // namespace qbs

#endif  // QBS_PARALLEL_HPP
