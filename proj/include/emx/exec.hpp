#pragma once

#include <cstddef>
#include <cstdint>

namespace emx {

// Execution policy for the batch kernels. The parallel path uses OpenMP when
// the build enables it and degrades to the serial loop otherwise. Both paths
// produce identical results and counters; the serial one is the reference.
enum class Exec { serial, parallel };

template <class F>
void parallel_for(std::size_t count, Exec ex, F&& body) {
#ifdef _OPENMP
  if (ex == Exec::parallel && count > 1) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)ex;
#endif
  for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace emx
