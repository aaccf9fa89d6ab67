#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coreset/importance.hpp"
#include "coreset/points.hpp"

namespace coreset {

// classic sequential seeding: next center drawn proportional to the current
// d_z(x, chosen), exact distances; zero total mass falls back to the lowest
// unchosen index
CenterSet kmeanspp_seed(const PointSet& u, std::size_t k, double z, std::uint64_t seed);

enum class EvalStrategy : std::uint8_t { uniform_from_data, kmeanspp, gaussian_random };

const char* strategy_name(EvalStrategy s);
// comma-separated list, e.g. "uniform-from-data,kmeanspp,gaussian-random"
std::vector<EvalStrategy> parse_strategies(const std::string& csv);
std::vector<EvalStrategy> all_strategies();

struct DistortionStats {
    double mean = 0.0;
    double p95 = 0.0;
    double max = 0.0;
    std::size_t trials_run = 0;
    std::size_t skipped = 0;             // trials with cost_z(U,C) = 0
    std::vector<double> errors;          // per-trial |relative error|, eval order
};

// draws `trials_per_strategy` center sets per strategy and measures
// |sum w*d_z - cost_z(U,C)| / cost_z(U,C) with exact costs on both sides
DistortionStats empirical_distortion(const PointSet& u, const WeightedPointSet& coreset,
                                     const ClusteringParams& p, std::size_t trials_per_strategy,
                                     const std::vector<EvalStrategy>& strategies,
                                     std::uint64_t seed);

struct BenchResult {
    PhaseTimes sketch;  // medians over repeats
    PhaseTimes exact;
    bool ran_sketch = false;
    bool ran_exact = false;
    double speedup = 0.0;  // exact total / sketch total (when both ran)
    CoresetDiagnostics sketch_diag;  // from the last sketch/exact run
    CoresetDiagnostics exact_diag;
};

enum class BenchBaseline : std::uint8_t { sketch, exact, both };

// Times the importance-sampling pipeline end-to-end. The exact baseline is
// the same pipeline with every sketch query replaced by an O(d)-per-center
// exact scan (the estimators pinned to identity mode).
BenchResult bench(const PointSet& u, const ClusteringParams& p, const CoresetConfig& cfg,
                  std::size_t repeats, BenchBaseline baseline);

}  // namespace coreset
