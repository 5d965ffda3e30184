#include "rcgen/parallel.hpp"

#include <thread>

namespace rcgen {

int effective_threads(int requested) {
#ifdef _OPENMP
    int hw = omp_get_max_threads();
#else
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
#endif
    if (requested == 0) return hw;
    return requested < 1 ? 1 : requested;
}

}  // namespace rcgen
