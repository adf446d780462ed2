#include "raonet/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace raonet::parallel {

int default_workers() {
    if (const char* env = std::getenv("RAONET_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

int resolve(int requested) {
    return requested > 0 ? requested : default_workers();
}

} // namespace raonet::parallel
