#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "coreset/points.hpp"

namespace coreset {

// ||x-y||_2^2 with four independent accumulator lanes. The lanes are part of
// the definition of the result here, not an optimization detail: they give
// the compiler a reassociation-free path to SIMD, and the final combine
// (a0+a1)+(a2+a3) is fixed so every call site agrees bit-for-bit.
inline double dist_sq(const double* x, const double* y, std::size_t d) {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::size_t j = 0;
    for (; j + 4 <= d; j += 4) {
        const double d0 = x[j] - y[j];
        const double d1 = x[j + 1] - y[j + 1];
        const double d2 = x[j + 2] - y[j + 2];
        const double d3 = x[j + 3] - y[j + 3];
        a0 += d0 * d0;
        a1 += d1 * d1;
        a2 += d2 * d2;
        a3 += d3 * d3;
    }
    for (; j < d; ++j) {
        const double t = x[j] - y[j];
        a0 += t * t;
    }
    return (a0 + a1) + (a2 + a3);
}

// ||.||^z from a squared norm. Integer z: repeated multiplication of the
// root. Non-integer z: exp(z*ln||.||). Zero short-circuits (no ln(0)).
inline double pow_z_from_sq(double sq, double z) {
    if (sq <= 0.0) return 0.0;
    const double r = std::sqrt(sq);
    if (z == std::floor(z) && z <= 64.0) {
        double acc = r;
        for (int t = 1; t < static_cast<int>(z); ++t) acc *= r;
        return acc;
    }
    return std::exp(z * std::log(r));
}

inline double dist_z(const double* x, const double* y, std::size_t d, double z) {
    return pow_z_from_sq(dist_sq(x, y, d), z);
}

inline double dist_z(const std::vector<double>& x, const std::vector<double>& y, double z) {
    require(x.size() == y.size() && !x.empty(), "dist_z: dimension mismatch");
    require(z >= 1.0, "dist_z: z must be >= 1");
    return dist_z(x.data(), y.data(), x.size(), z);
}

// nearest center: (index, d_z(x, C)); ties broken toward the lowest index
std::pair<std::size_t, double> point_to_set(const double* x, const CenterSet& c, double z);
std::pair<std::size_t, double> point_to_set(const std::vector<double>& x, const CenterSet& c,
                                            double z);

// For every row of q (nq x d, contiguous), the squared distance to the
// nearest of the nc rows of c, plus the argmin. The workhorse behind every
// exact scan; tiled over queries so center rows are reused from cache.
void batch_min_sq(const double* q, std::size_t nq, const double* c, std::size_t nc,
                  std::size_t d, double* min_sq, std::size_t* argmin);
void batch_min_sq_serial(const double* q, std::size_t nq, const double* c, std::size_t nc,
                         std::size_t d, double* min_sq, std::size_t* argmin);

// sum_i w_i * d_z(x_i, C), fixed-block deterministic reduction
double cost_z(const PointSet& u, const CenterSet& c, double z);
double cost_z(const WeightedPointSet& u, const CenterSet& c, double z);
double cost_z_serial(const PointSet& u, const CenterSet& c, double z);
double cost_z_serial(const WeightedPointSet& u, const CenterSet& c, double z);

}  // namespace coreset
