#include "thetalab/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace thetalab {

int configure_threads_from_env() {
  const char* raw = std::getenv("THETALAB_THREADS");
  if (raw == nullptr) return 0;
  try {
    const int n = std::stoi(raw);
    if (n < 1) return 0;
    omp_set_num_threads(n);
    return n;
  } catch (const std::exception&) {
    return 0;
  }
}

void set_thread_count(int threads) {
  if (threads >= 1) omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace thetalab
