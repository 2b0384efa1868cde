#pragma once

// Grid evaluation with an OpenMP worker pool and a serial reference path.
// Results land in preallocated slots, so output order never depends on the
// number of workers.

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

namespace casimir {

enum class Execution { serial, parallel };

/// Worker count used by parallel loops: CASIMIR_THREADS when set and positive,
/// otherwise the OpenMP default, further capped by set_thread_cap.
int worker_count();

/// Caps the pool for subsequent parallel loops; 0 removes the cap.
void set_thread_cap(int threads);

template <typename T, typename F>
std::vector<T> map_grid(std::size_t n, F&& f, Execution exec = Execution::parallel) {
    std::vector<T> out(n);
    if (exec == Execution::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::exception_ptr error;
    std::mutex guard;
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(guard);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace casimir
