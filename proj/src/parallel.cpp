#include "expsum/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>

namespace expsum {

int max_threads() {
  static const int cached = [] {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("EXPSUM_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && v >= 1) n = static_cast<int>(std::min<long>(n, v));
    }
    return std::max(1, n);
  }();
  return cached;
}

bool parallel_worthwhile(std::size_t n) { return n >= 512 && max_threads() > 1; }

}  // namespace expsum
