#pragma once

namespace ccproof::parallel {

// OpenMP team size for the parallel kernels: the OpenMP default, capped by
// the CCPROOF_THREADS environment variable when it holds a positive integer.
int thread_count();

}  // namespace ccproof::parallel
