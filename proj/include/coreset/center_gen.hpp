#pragma once

#include <cstdint>
#include <vector>

#include "coreset/points.hpp"

namespace coreset {

struct CenterGenConfig {
    double alpha = 8.0;   // oversampling: floor(alpha*k) draws per round
    double beta = 0.5;    // coverage fraction removed per round
    double eps0 = 0.1;    // estimator accuracy (passed down as eps0/z)
    double delta0 = 0.05;
    double c_m = 8.0;
    bool force_exact = false;  // identity-mode estimators (exact baseline)
    std::uint64_t seed = 0;
};

struct CenterGenResult {
    CenterSet v;                    // source_indices into the input set
    std::vector<std::size_t> tau;   // per input point -> slot in v
    std::size_t rounds = 0;
    std::vector<double> radii;      // powered coverage radius v_i per round

    // diagnostics (not part of the minimal result, used by tests/reports)
    std::vector<std::size_t> removed_per_round;
    std::vector<std::uint32_t> removed_round;  // UINT32_MAX = survived to the end
    std::vector<double> assign_dist;           // powered estimate d~_z(x, tau(x)); 0 for leftovers
};

// smallest value r in dists such that #{j : dists[j] <= r} >= ceil(beta*len);
// selection, not a sort
double coverage_radius(std::vector<double> dists, double beta);

// Successive sampling: repeatedly draw floor(alpha*k) points, carve out the
// beta-fraction of remaining points closest to the draw (by powered sketch
// distance), recurse on the rest. Leftovers enter v mapping to themselves.
CenterGenResult center_set_gen(const PointSet& u, std::size_t k, double z,
                               const CenterGenConfig& cfg);

}  // namespace coreset
