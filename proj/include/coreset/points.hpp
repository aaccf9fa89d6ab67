#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coreset {

// Dense row-major n x d point matrix. Immutable by convention once filled:
// everything downstream reads it from many threads concurrently.
struct PointSet {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> data;  // n*d, row-major

    PointSet() = default;
    PointSet(std::size_t n_, std::size_t d_) : n(n_), d(d_), data(n_ * d_, 0.0) {}

    double* row(std::size_t i) { return data.data() + i * d; }
    const double* row(std::size_t i) const { return data.data() + i * d; }
};

struct WeightedPointSet {
    PointSet points;
    std::vector<double> weights;  // length points.n, all >= 0
};

// Ordered list of centers; source_indices (optional) maps each center back
// to a row of the point set it was drawn from.
struct CenterSet {
    PointSet pts;
    std::vector<std::size_t> source_indices;  // empty if not applicable

    std::size_t size() const { return pts.n; }
    std::size_t dim() const { return pts.d; }
};

struct ClusteringParams {
    std::size_t k = 1;
    double z = 2.0;
    double eps = 0.1;
    double delta = 0.1;
    bool relaxed = false;  // allow eps/delta above 0.1
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline void validate(const ClusteringParams& p) {
    require(p.k >= 1, "k must be >= 1");
    require(p.z >= 1.0 && std::isfinite(p.z), "z must be >= 1");
    const double cap = p.relaxed ? 1.0 : 0.1;
    require(p.eps > 0.0 && p.eps <= cap, "eps out of range");
    require(p.delta > 0.0 && p.delta <= cap, "delta out of range");
}

inline void validate_points(const PointSet& u, const char* what = "point set") {
    require(u.n >= 1 && u.d >= 1, std::string(what) + ": n and d must be >= 1");
    require(u.data.size() == u.n * u.d, std::string(what) + ": bad buffer size");
    for (double v : u.data)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
}

// Treat a bare point matrix as a center set (no source rows).
inline CenterSet as_centers(PointSet pts) { return CenterSet{std::move(pts), {}}; }

// Gather rows idx of u into a fresh contiguous matrix.
inline PointSet gather_rows(const PointSet& u, const std::vector<std::size_t>& idx) {
    PointSet out(idx.size(), u.d);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const double* src = u.row(idx[i]);
        double* dst = out.row(i);
        for (std::size_t j = 0; j < u.d; ++j) dst[j] = src[j];
    }
    return out;
}

}  // namespace coreset
