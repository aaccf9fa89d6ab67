#include "coreset/rings.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>

#include "coreset/metrics.hpp"
#include "coreset/parallel.hpp"
#include "coreset/rng.hpp"
#include "coreset/sketch.hpp"

namespace coreset {

namespace {
constexpr std::uint64_t kCenterTag = 0x4347;
constexpr std::uint64_t kPartitionTag = 0x5254;
constexpr std::uint64_t kGroupTag = 0x4752;

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}
}  // namespace

Assignment assign_exact(const PointSet& u, const CenterSet& cstar, double z) {
    require(cstar.size() >= 1, "assign_exact: empty center set");
    require(u.d == cstar.dim(), "assign_exact: dimension mismatch");
    Assignment a;
    a.center.resize(u.n);
    a.cost.resize(u.n);
    std::vector<double> min_sq(u.n);
    batch_min_sq(u.data.data(), u.n, cstar.pts.data.data(), cstar.size(), u.d, min_sq.data(),
                 a.center.data());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < u.n; ++i) a.cost[i] = pow_z_from_sq(min_sq[i], z);
    return a;
}

ClusterStats cluster_stats(const Assignment& a, std::size_t n_centers) {
    ClusterStats s;
    s.size.assign(n_centers, 0);
    s.total.assign(n_centers, 0.0);
    s.avg.assign(n_centers, 0.0);
    // single fixed-order pass; per-cluster accumulation is not worth blocking
    for (std::size_t i = 0; i < a.center.size(); ++i) {
        ++s.size[a.center[i]];
        s.total[a.center[i]] += a.cost[i];
    }
    for (std::size_t c = 0; c < n_centers; ++c)
        if (s.size[c] > 0) s.avg[c] = s.total[c] / static_cast<double>(s.size[c]);
    return s;
}

ClusterStats cluster_stats(const PointSet& u, const CenterSet& cstar, double z) {
    return cluster_stats(assign_exact(u, cstar, z), cstar.size());
}

std::pair<int, int> ring_limits(double z, double eps) {
    require(eps > 0.0 && eps < 1.0, "ring_limits: eps out of range");
    require(z >= 1.0, "ring_limits: z must be >= 1");
    const int j_lo = static_cast<int>(std::floor(2.0 * z * std::log2(eps / z)));
    const int j_hi = static_cast<int>(std::ceil(2.0 * z * std::log2(z / eps)));
    return {j_lo, j_hi};
}

std::vector<RingIndex> partition_rings(const Assignment& a, const ClusterStats& s, double z,
                                       double eps) {
    const auto [j_lo, j_hi] = ring_limits(z, eps);
    const std::size_t n = a.center.size();
    std::vector<RingIndex> out(n);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = a.center[i];
        out[i].cluster = c;
        const double avg = s.avg[c];
        if (a.cost[i] <= 0.0 || avg <= 0.0) {
            // on-center points (and degenerate zero-cost clusters) sit in the
            // innermost ring by convention
            out[i].j = std::numeric_limits<int>::min();
            out[i].bucket = RingBucket::inner;
            continue;
        }
        const int j = static_cast<int>(std::floor(std::log2(a.cost[i] / avg)));
        out[i].j = j;
        out[i].bucket = j <= j_lo   ? RingBucket::inner
                        : j > j_hi  ? RingBucket::outer
                                    : RingBucket::main;
    }
    return out;
}

std::vector<GroupIndex> partition_groups(const Assignment& a, const ClusterStats& s,
                                         const std::vector<RingIndex>& rings, std::size_t k,
                                         double z, double eps) {
    require(rings.size() == a.center.size(), "partition_groups: ring/assignment mismatch");
    const std::size_t n = a.center.size();
    const std::size_t nc = s.size.size();
    const double kappa = std::pow(eps / (4.0 * z), z);  // (eps/4z)^z
    const double b_max = z * std::log2(4.0 * z / eps);

    // per-level per-cluster ring costs (main rings only), fixed-order sums
    std::map<int, std::vector<double>> level_cost;  // j -> per-cluster cost
    std::vector<double> outer_cost(nc, 0.0);
    double outer_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rings[i].bucket == RingBucket::main) {
            auto [it, inserted] = level_cost.try_emplace(rings[i].j);
            if (inserted) it->second.assign(nc, 0.0);
            it->second[a.center[i]] += a.cost[i];
        } else if (rings[i].bucket == RingBucket::outer) {
            outer_cost[a.center[i]] += a.cost[i];
            outer_total += a.cost[i];
        }
    }

    // band of a cluster-ring with cost rc inside a region of total cost rt:
    // b = floor(log2(rc*k / (kappa*rt)))
    const auto band = [&](double rc, double rt) {
        return static_cast<int>(
            std::floor(std::log2(rc * static_cast<double>(k) / (kappa * rt))));
    };

    std::map<int, std::vector<int>> level_band;  // j -> per-cluster band
    for (const auto& [j, costs] : level_cost) {
        double rt = 0.0;
        for (double v : costs) rt += v;
        auto& bands = level_band[j];
        bands.assign(nc, std::numeric_limits<int>::min());
        for (std::size_t c = 0; c < nc; ++c)
            if (costs[c] > 0.0) bands[c] = band(costs[c], rt);
    }
    std::vector<int> outer_band(nc, std::numeric_limits<int>::min());
    if (outer_total > 0.0)
        for (std::size_t c = 0; c < nc; ++c)
            if (outer_cost[c] > 0.0) outer_band[c] = band(outer_cost[c], outer_total);

    std::vector<GroupIndex> out(n);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = a.center[i];
        switch (rings[i].bucket) {
            case RingBucket::inner:
                out[i] = {GroupKind::inner_discard, 0, 0};
                break;
            case RingBucket::main: {
                const int b = level_band.at(rings[i].j)[c];
                if (b == std::numeric_limits<int>::min() || b <= 0)
                    out[i] = {GroupKind::cheap_min, rings[i].j, b};
                else if (static_cast<double>(b) >= b_max)
                    out[i] = {GroupKind::expensive_max, rings[i].j, b};
                else
                    out[i] = {GroupKind::interesting, rings[i].j, b};
                break;
            }
            case RingBucket::outer: {
                const int b = outer_band[c];
                // outer discard threshold is strict (b < 0), unlike the main rings
                if (b == std::numeric_limits<int>::min() || b < 0)
                    out[i] = {GroupKind::outer_min, 0, b};
                else if (static_cast<double>(b) >= b_max)
                    out[i] = {GroupKind::outer_max, 0, b};
                else
                    out[i] = {GroupKind::outer_interesting, 0, b};
                break;
            }
        }
    }
    return out;
}

WeightedPointSet cost_proportional_sample(const PointSet& u,
                                          const std::vector<std::size_t>& members,
                                          const std::vector<double>& member_costs,
                                          std::size_t beta_size, std::uint64_t seed) {
    require(!members.empty(), "cost_proportional_sample: empty group");
    require(members.size() == member_costs.size(), "cost_proportional_sample: size mismatch");
    require(beta_size >= 1, "cost_proportional_sample: need at least one draw");

    const std::size_t g = members.size();
    const double total = blocked_sum_serial(member_costs.data(), g);
    Rng rng(seed);
    std::vector<std::uint32_t> counts(g, 0);
    if (total > 0.0) {
        AliasTable alias(member_costs);
        for (std::size_t t = 0; t < beta_size; ++t) ++counts[alias.draw(rng)];
    } else {
        for (std::size_t t = 0; t < beta_size; ++t) ++counts[rng.next_below(g)];
    }

    std::vector<std::size_t> picked_pos;
    for (std::size_t p = 0; p < g; ++p)
        if (counts[p]) picked_pos.push_back(p);

    std::vector<std::size_t> rows(picked_pos.size());
    for (std::size_t p = 0; p < picked_pos.size(); ++p) rows[p] = members[picked_pos[p]];

    WeightedPointSet out;
    out.points = gather_rows(u, rows);
    out.weights.resize(picked_pos.size());
    const double bs = static_cast<double>(beta_size);
    for (std::size_t p = 0; p < picked_pos.size(); ++p) {
        const std::size_t pos = picked_pos[p];
        out.weights[p] = total > 0.0
                             ? static_cast<double>(counts[pos]) * total / (bs * member_costs[pos])
                             : static_cast<double>(counts[pos]) * static_cast<double>(g) / bs;
    }
    return out;
}

namespace {
WeightedPointSet sample_whole_set(const PointSet& g, std::size_t beta_size,
                                  const CenterSet& cstar, double z, std::uint64_t seed) {
    const Assignment a = assign_exact(g, cstar, z);
    std::vector<std::size_t> members(g.n);
    for (std::size_t i = 0; i < g.n; ++i) members[i] = i;
    return cost_proportional_sample(g, members, a.cost, beta_size, seed);
}
}  // namespace

WeightedPointSet group_sample(const PointSet& g, std::size_t beta_size, const CenterSet& cstar,
                              double z, std::uint64_t seed) {
    return sample_whole_set(g, beta_size, cstar, z, seed);
}

WeightedPointSet sensitivity_sample(const PointSet& g, std::size_t beta_size,
                                    const CenterSet& cstar, double z, std::uint64_t seed) {
    return sample_whole_set(g, beta_size, cstar, z, seed);
}

std::size_t group_sample_size(double eps, double delta, std::size_t k, std::size_t cstar_size,
                              double c_beta) {
    require(eps > 0.0 && eps <= 0.1, "group_sample_size: eps out of range");
    require(delta > 0.0 && delta <= 0.1, "group_sample_size: delta out of range");
    require(c_beta > 0.0, "group_sample_size: c_beta must be positive");
    require(cstar_size >= 1, "group_sample_size: empty center set");
    const double v = std::ceil(c_beta / (eps * eps) *
                               (static_cast<double>(k) * std::log(static_cast<double>(cstar_size)) +
                                std::log(std::log(1.0 / eps)) + std::log(1.0 / delta)));
    return v >= 1.0 ? static_cast<std::size_t>(v) : 1;
}

WeightedPointSet coreset_group(const PointSet& u, const ClusteringParams& p,
                               const GroupCoresetConfig& cfg, GroupDiagnostics* diag) {
    validate(p);
    require(!p.relaxed || p.eps <= 0.1, "coreset_group: eps must be <= 0.1");
    require(u.n >= p.k, "coreset_group: need n >= k");
    const auto t0 = std::chrono::steady_clock::now();

    CenterGenConfig ccfg = cfg.center_cfg;
    ccfg.seed = sub_seed(cfg.seed, kCenterTag);
    ccfg.force_exact = ccfg.force_exact || cfg.force_exact;
    const CenterGenResult cg = center_set_gen(u, p.k, p.z, ccfg);
    const double center_ms = ms_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    Assignment a;
    if (cfg.sketch_partition && !cfg.force_exact) {
        a.center.resize(u.n);
        a.cost.resize(u.n);
        DistanceEstimator est(cg.v.pts, cfg.delta1, cfg.eps1 / p.z,
                              sub_seed(cfg.seed, kPartitionTag), cfg.c_m, false);
        est.query_min_batch(u, p.z, a.center.data(), a.cost.data());
    } else {
        a = assign_exact(u, cg.v, p.z);
    }
    const ClusterStats stats = cluster_stats(a, cg.v.size());
    const std::vector<RingIndex> rings = partition_rings(a, stats, p.z, p.eps);
    const std::vector<GroupIndex> groups = partition_groups(a, stats, rings, p.k, p.z, p.eps);
    const double partition_ms = ms_since(t1);

    const auto t2 = std::chrono::steady_clock::now();
    // discards fold onto their centers; counts accumulate (a center can
    // receive both inner-ring and cheap-group points across levels)
    std::vector<double> center_weight(cg.v.size(), 0.0);
    // sampled groups: key sorts main groups (by level then band) before
    // outer groups (by band) — a fixed order for seeds and output layout
    struct Key {
        int outer, j, b;
        bool operator<(const Key& o) const {
            if (outer != o.outer) return outer < o.outer;
            if (j != o.j) return j < o.j;
            return b < o.b;
        }
    };
    std::map<Key, std::vector<std::size_t>> sampled;
    std::size_t kind_counts[7] = {0, 0, 0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < u.n; ++i) {
        const GroupIndex& gi = groups[i];
        ++kind_counts[static_cast<int>(gi.kind)];
        switch (gi.kind) {
            case GroupKind::inner_discard:
            case GroupKind::cheap_min:
            case GroupKind::outer_min:
                center_weight[a.center[i]] += 1.0;
                break;
            case GroupKind::expensive_max:
            case GroupKind::interesting:
                sampled[{0, gi.j, gi.b}].push_back(i);
                break;
            case GroupKind::outer_max:
            case GroupKind::outer_interesting:
                sampled[{1, 0, gi.b}].push_back(i);
                break;
        }
    }

    const std::size_t beta = cfg.beta_override > 0
                                 ? cfg.beta_override
                                 : group_sample_size(p.eps, p.delta, p.k, cg.v.size(), cfg.c_beta);

    std::vector<WeightedPointSet> parts;
    const std::uint64_t gbase = sub_seed(cfg.seed, kGroupTag);
    for (const auto& [key, members] : sampled) {
        std::vector<double> costs(members.size());
        for (std::size_t p2 = 0; p2 < members.size(); ++p2) costs[p2] = a.cost[members[p2]];
        const std::uint64_t gseed = sub_seed(
            sub_seed(sub_seed(gbase, static_cast<std::uint64_t>(key.outer)),
                     static_cast<std::uint64_t>(static_cast<std::int64_t>(key.j))),
            static_cast<std::uint64_t>(static_cast<std::int64_t>(key.b)));
        parts.push_back(cost_proportional_sample(u, members, costs, beta, gseed));
    }

    // assemble: surviving centers first, then group samples in key order
    std::size_t total_pts = 0;
    for (double w : center_weight)
        if (w > 0.0) ++total_pts;
    for (const auto& part : parts) total_pts += part.points.n;
    std::size_t discarded = 0;

    WeightedPointSet out;
    out.points = PointSet(total_pts, u.d);
    out.weights.resize(total_pts);
    std::size_t at = 0;
    for (std::size_t c = 0; c < cg.v.size(); ++c) {
        if (center_weight[c] <= 0.0) continue;
        const double* src = cg.v.pts.row(c);
        double* dst = out.points.row(at);
        for (std::size_t jd = 0; jd < u.d; ++jd) dst[jd] = src[jd];
        out.weights[at] = center_weight[c];
        discarded += static_cast<std::size_t>(center_weight[c]);
        ++at;
    }
    for (const auto& part : parts) {
        for (std::size_t i = 0; i < part.points.n; ++i) {
            const double* src = part.points.row(i);
            double* dst = out.points.row(at);
            for (std::size_t jd = 0; jd < u.d; ++jd) dst[jd] = src[jd];
            out.weights[at] = part.weights[i];
            ++at;
        }
    }
    const double sample_ms = ms_since(t2);

    if (diag) {
        diag->cstar_size = cg.v.size();
        diag->rounds = cg.rounds;
        diag->beta_used = beta;
        diag->groups_sampled = sampled.size();
        diag->n_inner = kind_counts[static_cast<int>(GroupKind::inner_discard)];
        diag->n_cheap = kind_counts[static_cast<int>(GroupKind::cheap_min)];
        diag->n_expensive = kind_counts[static_cast<int>(GroupKind::expensive_max)];
        diag->n_interesting = kind_counts[static_cast<int>(GroupKind::interesting)];
        diag->n_outer_min = kind_counts[static_cast<int>(GroupKind::outer_min)];
        diag->n_outer_max = kind_counts[static_cast<int>(GroupKind::outer_max)];
        diag->n_outer_interesting = kind_counts[static_cast<int>(GroupKind::outer_interesting)];
        diag->discarded_total = discarded;
        diag->coreset_size = out.points.n;
        diag->weight_sum = blocked_sum_serial(out.weights.data(), out.weights.size());
        diag->phases = {center_ms, partition_ms, sample_ms, ms_since(t0)};
    }
    return out;
}

}  // namespace coreset
