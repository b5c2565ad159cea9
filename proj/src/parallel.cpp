#include "loglie/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace loglie::parallel {

namespace {
std::atomic<bool> g_enabled{true};
}

void set_enabled(bool on) { g_enabled.store(on, std::memory_order_relaxed); }

bool enabled() {
#ifdef _OPENMP
  return g_enabled.load(std::memory_order_relaxed);
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

bool compiled_with_openmp() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace loglie::parallel
