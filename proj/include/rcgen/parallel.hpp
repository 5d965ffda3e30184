#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rcgen {

// Threads actually usable for a request. 0 means "all hardware threads".
int effective_threads(int requested);

// Index-parallel loop. threads <= 1 runs the serial reference path; outputs
// of both paths are identical by construction because iterations only write
// their own slot. Exceptions are captured and rethrown after the join.
template <typename Fn>
void parallel_for(size_t n, int threads, Fn&& fn) {
    if (threads <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
    std::exception_ptr error;
#pragma omp parallel for num_threads(threads) schedule(dynamic, 8)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            fn(static_cast<size_t>(i));
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
#else
    for (size_t i = 0; i < n; ++i) fn(i);
#endif
}

inline int worker_index() {
#ifdef _OPENMP
    return omp_get_thread_num();
#else
    return 0;
#endif
}

}  // namespace rcgen
