#pragma once

namespace kforms {

// Sets the OpenMP thread count from KFORMS_THREADS when it holds a positive
// integer; returns the resulting count.
int configure_threads_from_env();

int max_threads();

}  // namespace kforms
