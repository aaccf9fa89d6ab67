#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "coreset/points.hpp"

namespace coreset {

// rows of the projection: ceil(c_m * eps^-2 * ln(n/delta)), before clamping
std::size_t sketch_dim(std::size_t n, double eps, double delta, double c_m = 8.0);

// Gaussian-projection distance oracle over a fixed-size collection of
// centers. Entries of Pi are N(0,1)/sqrt(m), so ||Pi x|| estimates ||x||
// directly. When the formula gives m >= d the projection cannot pay for
// itself and the structure transparently stores the centers unprojected
// (identity mode, exact distances); force_identity pins that mode for
// exact-baseline comparisons.
class DistanceEstimator {
  public:
    DistanceEstimator(const PointSet& centers, double delta, double eps, std::uint64_t seed,
                      double c_m = 8.0, bool force_identity = false);

    // replace center i; exclusive access required (single writer)
    void update(std::size_t i, const double* c);
    void update(std::size_t i, const std::vector<double>& c);

    // unpowered l2 estimates ||Pi q - Pi c_i|| for every i
    std::vector<double> query(const double* q) const;
    std::vector<double> query(const std::vector<double>& q) const;

    // (argmin index, estimate^z); ties go to the lowest index
    std::pair<std::size_t, double> query_min(const double* q, double z) const;
    std::pair<std::size_t, double> query_min(const std::vector<double>& q, double z) const;

    // query_min for every row of queries, parallel over rows
    void query_min_batch(const PointSet& queries, double z, std::size_t* argmin,
                         double* value) const;

    bool identity() const { return identity_; }
    std::size_t size() const { return n_; }
    std::size_t dim() const { return d_; }
    std::size_t m_requested() const { return m_requested_; }
    std::size_t m_effective() const { return m_; }
    std::size_t storage_doubles() const { return pi_.size() + sketches_.size(); }
    // raw sketch table (n x m_effective), for determinism checks
    const std::vector<double>& sketch_table() const { return sketches_; }

  private:
    void project(const double* x, double* out) const;

    std::size_t n_, d_, m_requested_, m_;
    bool identity_;
    std::vector<double> pi_;        // m x d, row-major (empty in identity mode)
    std::vector<double> sketches_;  // n x m, row-major
};

}  // namespace coreset
