#include "coreset/sketch.hpp"

#include <cmath>
#include <limits>

#include "coreset/metrics.hpp"
#include "coreset/rng.hpp"

namespace coreset {

namespace {
constexpr std::uint64_t kPiTag = 0x7069;  // sub-seed domain for Pi rows

inline double dot4(const double* a, const double* b, std::size_t d) {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::size_t j = 0;
    for (; j + 4 <= d; j += 4) {
        a0 += a[j] * b[j];
        a1 += a[j + 1] * b[j + 1];
        a2 += a[j + 2] * b[j + 2];
        a3 += a[j + 3] * b[j + 3];
    }
    for (; j < d; ++j) a0 += a[j] * b[j];
    return (a0 + a1) + (a2 + a3);
}
}  // namespace

std::size_t sketch_dim(std::size_t n, double eps, double delta, double c_m) {
    require(n >= 1, "sketch_dim: n must be >= 1");
    require(eps > 0.0 && eps <= 0.1, "sketch_dim: eps out of range");
    require(delta > 0.0 && delta <= 0.1, "sketch_dim: delta out of range");
    require(c_m > 0.0, "sketch_dim: c_m must be positive");
    const double m = std::ceil(c_m / (eps * eps) *
                               std::log(static_cast<double>(n) / delta));
    return static_cast<std::size_t>(m);
}

DistanceEstimator::DistanceEstimator(const PointSet& centers, double delta, double eps,
                                     std::uint64_t seed, double c_m, bool force_identity)
    : n_(centers.n), d_(centers.d) {
    require(n_ >= 1, "DistanceEstimator: empty center collection");
    require(centers.data.size() == n_ * d_, "DistanceEstimator: bad center buffer");
    m_requested_ = sketch_dim(n_, eps, delta, c_m);
    identity_ = force_identity || m_requested_ >= d_;
    m_ = identity_ ? d_ : m_requested_;

    if (!identity_) {
        // one generator per row: rows are independent and can be filled in
        // any order/thread count with identical results
        pi_.resize(m_ * d_);
        const double scale = 1.0 / std::sqrt(static_cast<double>(m_));
        const std::uint64_t base = sub_seed(seed, kPiTag);
#pragma omp parallel for schedule(static)
        for (std::size_t r = 0; r < m_; ++r) {
            Rng rng(sub_seed(base, r));
            double* row = pi_.data() + r * d_;
            for (std::size_t j = 0; j < d_; ++j) row[j] = rng.next_gaussian() * scale;
        }
    }

    sketches_.resize(n_ * m_);
    if (identity_) {
        sketches_ = centers.data;
    } else {
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < n_; ++i)
            project(centers.row(i), sketches_.data() + i * m_);
    }
}

void DistanceEstimator::project(const double* x, double* out) const {
    for (std::size_t r = 0; r < m_; ++r) out[r] = dot4(pi_.data() + r * d_, x, d_);
}

void DistanceEstimator::update(std::size_t i, const double* c) {
    require(i < n_, "update: center index out of range");
    double* slot = sketches_.data() + i * m_;
    if (identity_) {
        for (std::size_t j = 0; j < d_; ++j) slot[j] = c[j];
    } else {
        project(c, slot);
    }
}

void DistanceEstimator::update(std::size_t i, const std::vector<double>& c) {
    require(c.size() == d_, "update: dimension mismatch");
    update(i, c.data());
}

std::vector<double> DistanceEstimator::query(const double* q) const {
    std::vector<double> scratch;
    const double* v = q;
    if (!identity_) {
        scratch.resize(m_);
        project(q, scratch.data());
        v = scratch.data();
    }
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        out[i] = std::sqrt(dist_sq(v, sketches_.data() + i * m_, m_));
    return out;
}

std::vector<double> DistanceEstimator::query(const std::vector<double>& q) const {
    require(q.size() == d_, "query: dimension mismatch");
    return query(q.data());
}

std::pair<std::size_t, double> DistanceEstimator::query_min(const double* q, double z) const {
    require(z >= 1.0, "query_min: z must be >= 1");
    std::vector<double> scratch;
    const double* v = q;
    if (!identity_) {
        scratch.resize(m_);
        project(q, scratch.data());
        v = scratch.data();
    }
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        const double s = dist_sq(v, sketches_.data() + i * m_, m_);
        if (s < best) {
            best = s;
            best_i = i;
        }
    }
    return {best_i, pow_z_from_sq(best, z)};
}

std::pair<std::size_t, double> DistanceEstimator::query_min(const std::vector<double>& q,
                                                            double z) const {
    require(q.size() == d_, "query_min: dimension mismatch");
    return query_min(q.data(), z);
}

void DistanceEstimator::query_min_batch(const PointSet& queries, double z, std::size_t* argmin,
                                        double* value) const {
    require(queries.d == d_, "query_min_batch: dimension mismatch");
    require(z >= 1.0, "query_min_batch: z must be >= 1");
    const std::size_t nq = queries.n;
    std::vector<double> min_sq(nq);
    if (identity_) {
        batch_min_sq(queries.data.data(), nq, sketches_.data(), n_, d_, min_sq.data(), argmin);
    } else {
        std::vector<double> projected(nq * m_);
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < nq; ++i)
            project(queries.row(i), projected.data() + i * m_);
        batch_min_sq(projected.data(), nq, sketches_.data(), n_, m_, min_sq.data(), argmin);
    }
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < nq; ++i) value[i] = pow_z_from_sq(min_sq[i], z);
}

}  // namespace coreset
