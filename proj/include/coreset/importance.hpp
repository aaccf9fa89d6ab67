#pragma once

#include <cstdint>
#include <vector>

#include "coreset/center_gen.hpp"
#include "coreset/points.hpp"

namespace coreset {

struct ScoreTable {
    std::vector<std::size_t> assigned;       // per-point slot in C*
    std::vector<double> approx_dist;         // powered sketch distance to assigned center
    std::vector<std::size_t> preimage_size;  // per center: |{x : assigned[x] = v}|
    double approx_total_cost = 0.0;          // sum of approx_dist
    std::vector<double> score;               // sigma~(x), constant factor dropped
    double total_score = 0.0;
};

// sigma~(x) = d~_z(x, c~*(x)) / cost~_z(U, C*) + 1/|X_{c~*(x)}|. The global
// constant multiplier in the written definition cancels in the normalized
// sampling probabilities and in w(x)*sigma~(x), so scores are stored without
// it. Zero total approximate cost (all points on centers) falls back to the
// preimage term alone.
ScoreTable assign_and_score(const PointSet& u, const CenterSet& cstar, double z, double eps1,
                            double delta1, std::uint64_t seed, double c_m = 8.0,
                            bool force_exact = false);

// Vose alias table: O(n) build, O(1) per draw, deterministic given the
// generator stream.
class AliasTable {
  public:
    explicit AliasTable(const std::vector<double>& weights);
    std::size_t draw(class Rng& rng) const;
    std::size_t size() const { return prob_.size(); }

  private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

// N i.i.d. draws with p_x = score[x]/total_score; duplicates merged, each
// draw carries weight total_score/(N*score[x]).
WeightedPointSet sample_coreset(const PointSet& u, const ScoreTable& table, std::size_t n_draws,
                                std::uint64_t seed);

struct CoresetConfig {
    std::size_t n_samples = 0;  // 0 = derive from the size bound, clamped to [1, n]
    double c_n = 1.0;
    double eps1 = 0.1;  // accuracy of the estimator over C*
    double delta1 = 0.05;
    double c_m = 8.0;
    CenterGenConfig center_cfg;  // its seed is overridden by the pipeline seed
    bool force_exact = false;    // exact-distance baseline pipeline
    std::uint64_t seed = 0;
};

struct PhaseTimes {
    double center_ms = 0.0;
    double score_ms = 0.0;
    double sample_ms = 0.0;
    double total_ms = 0.0;
};

struct CoresetDiagnostics {
    std::size_t cstar_size = 0;
    std::size_t rounds = 0;
    std::size_t n_draws = 0;
    std::size_t coreset_size = 0;
    double total_score = 0.0;
    double weight_sum = 0.0;
    PhaseTimes phases;
};

// ceil(c_n * eps^-(2z+2) * k * ln k * ln(k/(eps*delta))), clamped to [1, n]
std::size_t default_sample_count(const ClusteringParams& p, std::size_t n, double c_n = 1.0);

// center_set_gen -> assign_and_score -> sample_coreset
WeightedPointSet coreset_is(const PointSet& u, const ClusteringParams& p,
                            const CoresetConfig& cfg, CoresetDiagnostics* diag = nullptr);

}  // namespace coreset
