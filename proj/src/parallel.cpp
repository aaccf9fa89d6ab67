#include "coreset/parallel.hpp"

#include <omp.h>

#include <cstdlib>

namespace coreset {

int env_thread_cap() {
    static int cap = [] {
        const char* v = std::getenv("CORESET_THREADS");
        if (!v || !*v) return 0;
        const long n = std::strtol(v, nullptr, 10);
        return n > 0 ? static_cast<int>(n) : 0;
    }();
    return cap;
}

void apply_thread_cap() {
    omp_set_dynamic(0);  // exact team sizes, results must not depend on load
    if (int cap = env_thread_cap(); cap > 0) omp_set_num_threads(cap);
}

void apply_thread_cap(int threads) {
    omp_set_dynamic(0);
    if (threads > 0) {
        omp_set_num_threads(threads);
    } else if (int cap = env_thread_cap(); cap > 0) {
        omp_set_num_threads(cap);
    } else {
        omp_set_num_threads(omp_get_num_procs());
    }
}

double pairwise_tree(std::vector<double>& p) {
    std::size_t m = p.size();
    if (m == 0) return 0.0;
    while (m > 1) {
        const std::size_t half = m / 2;
        for (std::size_t i = 0; i < half; ++i) p[i] = p[2 * i] + p[2 * i + 1];
        if (m % 2) {
            p[half] = p[m - 1];
            m = half + 1;
        } else {
            m = half;
        }
    }
    return p[0];
}

double blocked_sum(const double* vals, std::size_t n) {
    return blocked_transform_sum(n, [vals](std::size_t i) { return vals[i]; });
}

double blocked_sum_serial(const double* vals, std::size_t n) {
    return blocked_transform_sum_serial(n, [vals](std::size_t i) { return vals[i]; });
}

}  // namespace coreset
