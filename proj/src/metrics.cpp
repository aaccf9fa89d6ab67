#include "coreset/metrics.hpp"

#include <limits>

#include "coreset/parallel.hpp"

namespace coreset {

namespace {
constexpr std::size_t kQueryTile = 32;  // 32 rows of d<=4096 doubles stay in L2

inline void min_sq_tile(const double* q, std::size_t lo, std::size_t hi, const double* c,
                        std::size_t nc, std::size_t d, double* min_sq, std::size_t* argmin) {
    for (std::size_t i = lo; i < hi; ++i) {
        min_sq[i] = std::numeric_limits<double>::infinity();
        argmin[i] = 0;
    }
    for (std::size_t j = 0; j < nc; ++j) {
        const double* crow = c + j * d;
        for (std::size_t i = lo; i < hi; ++i) {
            const double s = dist_sq(q + i * d, crow, d);
            if (s < min_sq[i]) {  // strict: ties keep the lowest center index
                min_sq[i] = s;
                argmin[i] = j;
            }
        }
    }
}
}  // namespace

void batch_min_sq(const double* q, std::size_t nq, const double* c, std::size_t nc,
                  std::size_t d, double* min_sq, std::size_t* argmin) {
    const std::size_t ntiles = (nq + kQueryTile - 1) / kQueryTile;
#pragma omp parallel for schedule(static)
    for (std::size_t t = 0; t < ntiles; ++t) {
        const std::size_t lo = t * kQueryTile;
        const std::size_t hi = lo + kQueryTile < nq ? lo + kQueryTile : nq;
        min_sq_tile(q, lo, hi, c, nc, d, min_sq, argmin);
    }
}

void batch_min_sq_serial(const double* q, std::size_t nq, const double* c, std::size_t nc,
                         std::size_t d, double* min_sq, std::size_t* argmin) {
    const std::size_t ntiles = (nq + kQueryTile - 1) / kQueryTile;
    for (std::size_t t = 0; t < ntiles; ++t) {
        const std::size_t lo = t * kQueryTile;
        const std::size_t hi = lo + kQueryTile < nq ? lo + kQueryTile : nq;
        min_sq_tile(q, lo, hi, c, nc, d, min_sq, argmin);
    }
}

std::pair<std::size_t, double> point_to_set(const double* x, const CenterSet& c, double z) {
    require(c.size() >= 1, "point_to_set: empty center set");
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double s = dist_sq(x, c.pts.row(i), c.dim());
        if (s < best) {
            best = s;
            best_i = i;
        }
    }
    return {best_i, pow_z_from_sq(best, z)};
}

std::pair<std::size_t, double> point_to_set(const std::vector<double>& x, const CenterSet& c,
                                            double z) {
    require(c.size() >= 1, "point_to_set: empty center set");
    require(x.size() == c.dim(), "point_to_set: dimension mismatch");
    require(z >= 1.0, "point_to_set: z must be >= 1");
    return point_to_set(x.data(), c, z);
}

namespace {
template <class W>
double cost_z_impl(const PointSet& u, const W& weight, const CenterSet& c, double z,
                   bool parallel) {
    require(c.size() >= 1, "cost_z: empty center set");
    require(u.d == c.dim(), "cost_z: dimension mismatch");
    const auto term = [&](std::size_t i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < c.size(); ++j) {
            const double s = dist_sq(u.row(i), c.pts.row(j), u.d);
            if (s < best) best = s;
        }
        return weight(i) * pow_z_from_sq(best, z);
    };
    return parallel ? blocked_transform_sum(u.n, term)
                    : blocked_transform_sum_serial(u.n, term);
}
}  // namespace

double cost_z(const PointSet& u, const CenterSet& c, double z) {
    return cost_z_impl(u, [](std::size_t) { return 1.0; }, c, z, true);
}

double cost_z(const WeightedPointSet& u, const CenterSet& c, double z) {
    require(u.weights.size() == u.points.n, "cost_z: weight count mismatch");
    const double* w = u.weights.data();
    return cost_z_impl(u.points, [w](std::size_t i) { return w[i]; }, c, z, true);
}

double cost_z_serial(const PointSet& u, const CenterSet& c, double z) {
    return cost_z_impl(u, [](std::size_t) { return 1.0; }, c, z, false);
}

double cost_z_serial(const WeightedPointSet& u, const CenterSet& c, double z) {
    require(u.weights.size() == u.points.n, "cost_z: weight count mismatch");
    const double* w = u.weights.data();
    return cost_z_impl(u.points, [w](std::size_t i) { return w[i]; }, c, z, false);
}

}  // namespace coreset
