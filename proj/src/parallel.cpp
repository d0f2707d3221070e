#include "mpgmres/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mpgmres {

namespace {

#ifdef _OPENMP
const int kDefaultThreads = omp_get_max_threads();
#endif

}  // namespace

int threads_from_environment() noexcept {
  const char* s = std::getenv("MPGMRES_NUM_THREADS");
  if (s == nullptr) return 0;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v <= 0 || v > 4096) return 0;
  return static_cast<int>(v);
}

int num_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_num_threads(int n) noexcept {
#ifdef _OPENMP
  if (n <= 0) n = threads_from_environment();
  if (n <= 0) n = kDefaultThreads;
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace mpgmres
