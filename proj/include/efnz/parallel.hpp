#ifndef EFNZ_PARALLEL_HPP
#define EFNZ_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace efnz {

/// Threads used when a caller passes 0 (OpenMP's max, or 1 without OpenMP).
int default_thread_count();

/// Runs body(i) for i in [0, n). threads = 1 uses the serial reference
/// loop; threads != 1 fans out with OpenMP when available. Each index must
/// touch only its own slot of any shared output, so results are identical
/// bit for bit no matter the thread count: replications derive their own
/// RNG child streams up front and aggregation happens after the join,
/// ordered by index.
void parallel_for_indexed(std::size_t n, int threads,
                          const std::function<void(std::size_t)>& body);

}  // namespace efnz

#endif  // EFNZ_PARALLEL_HPP
