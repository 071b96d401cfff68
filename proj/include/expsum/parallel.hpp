#pragma once

#include <cstddef>

namespace expsum {

/// Worker-thread budget: the OpenMP default, capped by the EXPSUM_THREADS
/// environment variable when it is set. Read once per process.
int max_threads();

/// True when a loop of n independent items is worth running in parallel.
bool parallel_worthwhile(std::size_t n);

}  // namespace expsum
