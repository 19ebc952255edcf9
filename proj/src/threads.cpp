#include "moyalkit/threads.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace moyalkit {

int configure_threads() {
#ifdef _OPENMP
    static int resolved = [] {
        if (const char* env = std::getenv("MOYALKIT_THREADS")) {
            int requested = std::atoi(env);
            if (requested > 0) {
                omp_set_num_threads(requested);
                return requested;
            }
        }
        return omp_get_max_threads();
    }();
    return resolved;
#else
    return 1;
#endif
}

} // namespace moyalkit
