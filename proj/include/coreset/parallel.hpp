#pragma once

#include <cstddef>
#include <vector>

// Determinism rules for every parallel site in this library:
//   1. Parallel loops write only through their own index (no shared
//      accumulators, no atomics on floats).
//   2. Floating-point reductions go through the fixed-block scheme below:
//      serial sums over fixed 2048-element blocks, then a serial pairwise
//      tree over the block partials. Block boundaries depend only on n, so
//      the result is byte-identical at any thread count. Pairwise combining
//      also keeps rounding error O(block + log n_blocks) ulps, which matters
//      for distortion measurements at large n.
//   3. Sampling and other stateful work stays on the coordinating thread.

namespace coreset {

inline constexpr std::size_t kSumBlock = 2048;

// Effective worker count: CORESET_THREADS env var caps OpenMP threads
// (0 or unset = library default). Applied once at startup by callers that
// care (the CLI). The explicit overload pins a team size (0 restores the
// env cap / hardware default) — determinism tests sweep it.
int env_thread_cap();
void apply_thread_cap();
void apply_thread_cap(int threads);

// Serial pairwise tree over partials (consumed in place).
double pairwise_tree(std::vector<double>& partials);

// sum of vals[0..n) — OpenMP over blocks, deterministic
double blocked_sum(const double* vals, std::size_t n);
// identical arithmetic, no OpenMP (reference twin for the benchmark/tests)
double blocked_sum_serial(const double* vals, std::size_t n);

namespace detail {
template <class F>
inline double block_partial(std::size_t lo, std::size_t hi, const F& f) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += f(i);
    return acc;
}
}  // namespace detail

// sum over i in [0,n) of f(i), same fixed-block scheme. Header template so
// the lambda inlines; the OpenMP pragma lives in the non-template overloads
// in parallel.cpp via this indirection.
template <class F>
double blocked_transform_sum_serial(std::size_t n, const F& f) {
    if (n == 0) return 0.0;
    const std::size_t nb = (n + kSumBlock - 1) / kSumBlock;
    std::vector<double> partials(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t lo = b * kSumBlock;
        const std::size_t hi = lo + kSumBlock < n ? lo + kSumBlock : n;
        partials[b] = detail::block_partial(lo, hi, f);
    }
    return pairwise_tree(partials);
}

template <class F>
double blocked_transform_sum(std::size_t n, const F& f) {
    if (n == 0) return 0.0;
    const std::size_t nb = (n + kSumBlock - 1) / kSumBlock;
    std::vector<double> partials(nb);
#pragma omp parallel for schedule(static)
    for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t lo = b * kSumBlock;
        const std::size_t hi = lo + kSumBlock < n ? lo + kSumBlock : n;
        partials[b] = detail::block_partial(lo, hi, f);
    }
    return pairwise_tree(partials);
}

}  // namespace coreset
