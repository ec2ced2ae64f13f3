#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace thetalab {

// Reads THETALAB_THREADS and caps the OpenMP worker count. Returns the cap in
// effect (0 when the variable is unset or invalid).
int configure_threads_from_env();

// Overrides the worker count for subsequent parallel regions.
void set_thread_count(int threads);

int max_threads();

// Runs body(i) for i in [0, count) on the OpenMP team.  Exceptions do not
// cross the parallel region; the one thrown at the lowest index is rethrown
// afterwards, so failures are reported the same way at any thread count.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace thetalab
