#include "ccproof/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>

namespace ccproof::parallel {

int thread_count() {
  int n = omp_get_max_threads();
  if (const char* cap = std::getenv("CCPROOF_THREADS")) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(cap, cap + std::strlen(cap), value);
    if (ec == std::errc{} && value > 0) n = std::min(n, value);
  }
  return std::max(n, 1);
}

}  // namespace ccproof::parallel
