#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "coreset/center_gen.hpp"
#include "coreset/importance.hpp"  // PhaseTimes
#include "coreset/points.hpp"

namespace coreset {

// nearest-center assignment with powered costs (exact by default; the group
// pipeline can opt into sketch distances)
struct Assignment {
    std::vector<std::size_t> center;  // per point
    std::vector<double> cost;         // per point, d_z(x, C*)
};
Assignment assign_exact(const PointSet& u, const CenterSet& cstar, double z);

struct ClusterStats {
    std::vector<std::size_t> size;
    std::vector<double> total;  // cost_z of the cluster
    std::vector<double> avg;    // Sigma_C = total/size; 0 for empty clusters
};
ClusterStats cluster_stats(const Assignment& a, std::size_t n_centers);
ClusterStats cluster_stats(const PointSet& u, const CenterSet& cstar, double z);

enum class RingBucket : std::uint8_t { inner, main, outer };

struct RingIndex {
    std::size_t cluster = 0;
    int j = 0;  // ring level: 2^j*Sigma <= cost < 2^(j+1)*Sigma (INT_MIN for zero cost)
    RingBucket bucket = RingBucket::inner;
};

// (j_lo, j_hi): inner iff j <= j_lo = floor(2z*log2(eps/z)),
//               outer iff j >  j_hi = ceil(2z*log2(z/eps))
std::pair<int, int> ring_limits(double z, double eps);

std::vector<RingIndex> partition_rings(const Assignment& a, const ClusterStats& s, double z,
                                       double eps);

enum class GroupKind : std::uint8_t {
    inner_discard,      // inner rings: point count folds onto its center
    cheap_min,          // main ring, band b <= 0: discarded likewise
    expensive_max,      // main ring, b >= z*log2(4z/eps): sampled
    interesting,        // main ring, 0 < b < z*log2(4z/eps): sampled
    outer_min,          // outer, b < 0 (strict, unlike the main rings): discarded
    outer_max,          // outer, b >= z*log2(4z/eps): sampled
    outer_interesting,  // outer, 0 <= b < z*log2(4z/eps): sampled
};

struct GroupIndex {
    GroupKind kind = GroupKind::inner_discard;
    int j = 0;  // ring level (main kinds only)
    int b = 0;  // cost band
};

std::vector<GroupIndex> partition_groups(const Assignment& a, const ClusterStats& s,
                                         const std::vector<RingIndex>& rings, std::size_t k,
                                         double z, double eps);

// beta_size i.i.d. draws from g with p_x = cost_z(x,C*)/cost_z(G,C*), weight
// cost_z(G,C*)/(beta_size*cost_z(x,C*)) per draw, duplicates merged. A
// zero-cost group falls back to uniform draws of weight |G|/beta_size.
WeightedPointSet group_sample(const PointSet& g, std::size_t beta_size, const CenterSet& cstar,
                              double z, std::uint64_t seed);
// Same sampling law; separate entry point because the outer groups carry a
// different error contract and sample-size formula.
WeightedPointSet sensitivity_sample(const PointSet& g, std::size_t beta_size,
                                    const CenterSet& cstar, double z, std::uint64_t seed);

// shared core used by the pipeline (costs already known)
WeightedPointSet cost_proportional_sample(const PointSet& u,
                                          const std::vector<std::size_t>& members,
                                          const std::vector<double>& member_costs,
                                          std::size_t beta_size, std::uint64_t seed);

// ceil(c_beta * eps^-2 * (k*ln|C*| + ln ln(1/eps) + ln(1/delta)))
std::size_t group_sample_size(double eps, double delta, std::size_t k, std::size_t cstar_size,
                              double c_beta = 1.0);

struct GroupCoresetConfig {
    double c_beta = 1.0;
    std::size_t beta_override = 0;  // 0 = use group_sample_size
    CenterGenConfig center_cfg;     // seed overridden by the pipeline seed
    bool sketch_partition = false;  // opt-in: partition on sketch distances
    double eps1 = 0.1;              // estimator accuracy if sketch_partition
    double delta1 = 0.05;
    double c_m = 8.0;
    bool force_exact = false;
    std::uint64_t seed = 0;
};

struct GroupDiagnostics {
    std::size_t cstar_size = 0;
    std::size_t rounds = 0;
    std::size_t beta_used = 0;
    std::size_t groups_sampled = 0;
    // per-kind point counts; they always sum to n
    std::size_t n_inner = 0, n_cheap = 0, n_expensive = 0, n_interesting = 0;
    std::size_t n_outer_min = 0, n_outer_max = 0, n_outer_interesting = 0;
    std::size_t discarded_total = 0;  // inner + cheap + outer_min
    std::size_t coreset_size = 0;
    double weight_sum = 0.0;
    PhaseTimes phases;  // center_ms, score_ms = partition, sample_ms, total_ms
};

// Ring/group coreset: discard cheap regions onto center weights, sample the
// interesting groups, output surviving centers plus all samples.
WeightedPointSet coreset_group(const PointSet& u, const ClusteringParams& p,
                               const GroupCoresetConfig& cfg, GroupDiagnostics* diag = nullptr);

}  // namespace coreset
