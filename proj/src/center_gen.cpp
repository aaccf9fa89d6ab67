#include "coreset/center_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "coreset/rng.hpp"
#include "coreset/sketch.hpp"

namespace coreset {

namespace {
constexpr std::uint64_t kSampleTag = 0x5347;  // round sampling stream
constexpr std::uint64_t kRoundTag = 0x4553;   // per-round estimator seeds
}  // namespace

double coverage_radius(std::vector<double> dists, double beta) {
    require(!dists.empty(), "coverage_radius: empty input");
    require(beta > 0.0 && beta < 1.0, "coverage_radius: beta out of range");
    const std::size_t t = static_cast<std::size_t>(
        std::ceil(beta * static_cast<double>(dists.size())));
    // t-th smallest (t >= 1): at least t values are <= it, and no smaller
    // element of dists has that property
    std::nth_element(dists.begin(), dists.begin() + (t - 1), dists.end());
    return dists[t - 1];
}

CenterGenResult center_set_gen(const PointSet& u, std::size_t k, double z,
                               const CenterGenConfig& cfg) {
    require(u.n >= 1 && u.d >= 1, "center_set_gen: empty input");
    require(k >= 1, "center_set_gen: k must be >= 1");
    require(z >= 1.0, "center_set_gen: z must be >= 1");
    require(cfg.alpha >= 1.0, "center_set_gen: alpha must be >= 1");
    require(cfg.beta > 0.0 && cfg.beta < 1.0, "center_set_gen: beta out of range");
    require(cfg.eps0 > 0.0 && cfg.eps0 <= 0.1, "center_set_gen: eps0 out of range");
    require(cfg.delta0 > 0.0 && cfg.delta0 <= 0.1, "center_set_gen: delta0 out of range");

    const std::size_t n = u.n;
    const double guard = cfg.alpha * static_cast<double>(k);
    const std::size_t draws = static_cast<std::size_t>(std::floor(guard));

    CenterGenResult res;
    res.tau.assign(n, std::numeric_limits<std::size_t>::max());
    res.removed_round.assign(n, std::numeric_limits<std::uint32_t>::max());
    res.assign_dist.assign(n, 0.0);

    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = i;

    std::vector<std::size_t> v_src;  // accumulated center rows (indices into u)
    Rng sampler(sub_seed(cfg.seed, kSampleTag));

    std::size_t round = 0;
    while (static_cast<double>(active.size()) > guard) {
        // (a) floor(alpha*k) draws with replacement, deduplicated; slot order
        // is ascending original index so ties and seeds stay reproducible
        std::vector<std::size_t> s_idx(draws);
        for (std::size_t t = 0; t < draws; ++t)
            s_idx[t] = active[sampler.next_below(active.size())];
        std::sort(s_idx.begin(), s_idx.end());
        s_idx.erase(std::unique(s_idx.begin(), s_idx.end()), s_idx.end());

        // (b) fresh estimator over this round's sample, accuracy eps0/z so
        // the z-th powers of its estimates are within ~(1 +- eps0)
        const PointSet s_pts = gather_rows(u, s_idx);
        DistanceEstimator est(s_pts, cfg.delta0, cfg.eps0 / z,
                              sub_seed(sub_seed(cfg.seed, kRoundTag), round), cfg.c_m,
                              cfg.force_exact);

        // (c) powered min sketch distance for every remaining point
        const PointSet u_pts = gather_rows(u, active);
        std::vector<std::size_t> nn(active.size());
        std::vector<double> dv(active.size());
        est.query_min_batch(u_pts, z, nn.data(), dv.data());

        // (d) radius covering ceil(beta*|U_i|) points
        const double v_i = coverage_radius(dv, cfg.beta);

        // (e)+(f) covered points leave with tau = nearest sample member;
        // sampled points have distance 0 so the sample always covers itself
        const std::size_t base = v_src.size();
        v_src.insert(v_src.end(), s_idx.begin(), s_idx.end());
        std::vector<std::size_t> next_active;
        next_active.reserve(active.size());
        std::size_t removed = 0;
        for (std::size_t pos = 0; pos < active.size(); ++pos) {
            const std::size_t x = active[pos];
            if (dv[pos] <= v_i) {
                res.tau[x] = base + nn[pos];
                res.removed_round[x] = static_cast<std::uint32_t>(round);
                res.assign_dist[x] = dv[pos];
                ++removed;
            } else {
                next_active.push_back(x);
            }
        }
        res.radii.push_back(v_i);
        res.removed_per_round.push_back(removed);
        active.swap(next_active);
        ++round;
    }

    // leftovers become centers of their own, tau = identity
    const std::size_t base = v_src.size();
    for (std::size_t pos = 0; pos < active.size(); ++pos) {
        res.tau[active[pos]] = base + pos;
        v_src.push_back(active[pos]);
    }

    res.rounds = round;
    res.v.pts = gather_rows(u, v_src);
    res.v.source_indices = std::move(v_src);
    return res;
}

}  // namespace coreset
