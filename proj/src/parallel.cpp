#include "casimir/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace casimir {

namespace {

std::atomic<int> g_cap{0};

int env_threads() {
    const char* v = std::getenv("CASIMIR_THREADS");
    if (!v) return 0;
    try {
        return std::max(0, std::stoi(v));
    } catch (...) {
        return 0;
    }
}

}  // namespace

int worker_count() {
    int n = env_threads();
    if (n == 0) n = omp_get_max_threads();
    if (int c = g_cap.load(); c > 0) n = std::min(n, c);
    return std::max(1, n);
}

void set_thread_cap(int threads) { g_cap.store(std::max(0, threads)); }

}  // namespace casimir
