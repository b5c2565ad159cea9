#ifndef LOGLIE_PARALLEL_HPP
#define LOGLIE_PARALLEL_HPP

#include <atomic>

namespace loglie::parallel {

// Global switch for the OpenMP code paths. Parallel and serial paths perform
// the same arithmetic in the same order per output element, so flipping the
// switch never changes results, only wall time.
void set_enabled(bool on);
bool enabled();

/// Number of threads OpenMP would use (1 when built without OpenMP).
int max_threads();

/// True when the library was compiled with OpenMP support.
bool compiled_with_openmp();

}  // namespace loglie::parallel

#endif
