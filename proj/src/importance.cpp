#include "coreset/importance.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>

#include "coreset/parallel.hpp"
#include "coreset/rng.hpp"
#include "coreset/sketch.hpp"

namespace coreset {

namespace {
constexpr std::uint64_t kCenterTag = 0x4347;
constexpr std::uint64_t kAssignTag = 0x4153;
constexpr std::uint64_t kDrawTag = 0x4452;

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}
}  // namespace

ScoreTable assign_and_score(const PointSet& u, const CenterSet& cstar, double z, double eps1,
                            double delta1, std::uint64_t seed, double c_m, bool force_exact) {
    require(cstar.size() >= 1, "assign_and_score: empty center set");
    require(u.d == cstar.dim(), "assign_and_score: dimension mismatch");
    require(z >= 1.0, "assign_and_score: z must be >= 1");

    ScoreTable t;
    t.assigned.resize(u.n);
    t.approx_dist.resize(u.n);

    DistanceEstimator est(cstar.pts, delta1, eps1 / z, seed, c_m, force_exact);
    est.query_min_batch(u, z, t.assigned.data(), t.approx_dist.data());

    t.preimage_size.assign(cstar.size(), 0);
    for (std::size_t i = 0; i < u.n; ++i) ++t.preimage_size[t.assigned[i]];

    t.approx_total_cost = blocked_sum(t.approx_dist.data(), u.n);

    t.score.resize(u.n);
    const double total = t.approx_total_cost;
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < u.n; ++i) {
        const double pre = 1.0 / static_cast<double>(t.preimage_size[t.assigned[i]]);
        t.score[i] = total > 0.0 ? t.approx_dist[i] / total + pre : pre;
    }
    t.total_score = blocked_sum(t.score.data(), u.n);
    return t;
}

AliasTable::AliasTable(const std::vector<double>& weights) {
    const std::size_t n = weights.size();
    require(n >= 1, "AliasTable: empty weights");
    require(n < std::numeric_limits<std::uint32_t>::max(), "AliasTable: too many entries");
    const double total = blocked_sum_serial(weights.data(), n);
    require(total > 0.0 && std::isfinite(total), "AliasTable: weights must sum to > 0");

    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) {
        require(weights[i] >= 0.0 && std::isfinite(weights[i]),
                "AliasTable: negative or non-finite weight");
        scaled[i] = weights[i] * static_cast<double>(n) / total;
    }

    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<std::uint32_t> small, large;  // LIFO worklists, deterministic order
    for (std::size_t i = 0; i < n; ++i)
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));

    while (!small.empty() && !large.empty()) {
        const std::uint32_t s = small.back();
        small.pop_back();
        const std::uint32_t l = large.back();
        large.pop_back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    // numerical leftovers sit at probability 1
    for (std::uint32_t i : large) prob_[i] = 1.0;
    for (std::uint32_t i : small) prob_[i] = 1.0;
}

std::size_t AliasTable::draw(Rng& rng) const {
    const std::size_t i = rng.next_below(prob_.size());
    return rng.next_double() < prob_[i] ? i : alias_[i];
}

WeightedPointSet sample_coreset(const PointSet& u, const ScoreTable& table, std::size_t n_draws,
                                std::uint64_t seed) {
    require(n_draws >= 1, "sample_coreset: need at least one draw");
    require(table.score.size() == u.n, "sample_coreset: table/point-set size mismatch");

    AliasTable alias(table.score);
    Rng rng(sub_seed(seed, kDrawTag));
    std::vector<std::uint32_t> counts(u.n, 0);
    for (std::size_t t = 0; t < n_draws; ++t) ++counts[alias.draw(rng)];

    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < u.n; ++i)
        if (counts[i]) picked.push_back(i);

    WeightedPointSet out;
    out.points = gather_rows(u, picked);
    out.weights.resize(picked.size());
    const double scale = table.total_score / static_cast<double>(n_draws);
    for (std::size_t p = 0; p < picked.size(); ++p)
        out.weights[p] = static_cast<double>(counts[picked[p]]) * scale / table.score[picked[p]];
    return out;
}

std::size_t default_sample_count(const ClusteringParams& p, std::size_t n, double c_n) {
    require(c_n > 0.0, "default_sample_count: c_n must be positive");
    const double k = static_cast<double>(p.k);
    const double raw = std::ceil(c_n * std::pow(p.eps, -(2.0 * p.z + 2.0)) * k * std::log(k) *
                                 std::log(k / (p.eps * p.delta)));
    if (!(raw >= 1.0)) return 1;  // covers k=1 (ln k = 0) and any NaN edge
    if (raw >= static_cast<double>(n)) return n;
    return static_cast<std::size_t>(raw);
}

WeightedPointSet coreset_is(const PointSet& u, const ClusteringParams& p,
                            const CoresetConfig& cfg, CoresetDiagnostics* diag) {
    validate(p);
    require(u.n >= p.k, "coreset_is: need n >= k");
    const auto t0 = std::chrono::steady_clock::now();

    CenterGenConfig ccfg = cfg.center_cfg;
    ccfg.seed = sub_seed(cfg.seed, kCenterTag);
    ccfg.force_exact = ccfg.force_exact || cfg.force_exact;
    const CenterGenResult cg = center_set_gen(u, p.k, p.z, ccfg);
    const double center_ms = ms_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    const ScoreTable table =
        assign_and_score(u, cg.v, p.z, cfg.eps1, cfg.delta1, sub_seed(cfg.seed, kAssignTag),
                         cfg.c_m, cfg.force_exact);
    const double score_ms = ms_since(t1);

    const auto t2 = std::chrono::steady_clock::now();
    const std::size_t n_draws =
        cfg.n_samples > 0 ? cfg.n_samples : default_sample_count(p, u.n, cfg.c_n);
    WeightedPointSet out = sample_coreset(u, table, n_draws, cfg.seed);
    const double sample_ms = ms_since(t2);

    if (diag) {
        diag->cstar_size = cg.v.size();
        diag->rounds = cg.rounds;
        diag->n_draws = n_draws;
        diag->coreset_size = out.points.n;
        diag->total_score = table.total_score;
        diag->weight_sum = blocked_sum_serial(out.weights.data(), out.weights.size());
        diag->phases = {center_ms, score_ms, sample_ms, ms_since(t0)};
    }
    return out;
}

}  // namespace coreset
