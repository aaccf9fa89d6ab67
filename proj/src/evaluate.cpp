#include "coreset/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "coreset/metrics.hpp"
#include "coreset/parallel.hpp"
#include "coreset/rng.hpp"

namespace coreset {

namespace {
constexpr std::uint64_t kSeedTag = 0x4B50;
constexpr std::uint64_t kEvalTag = 0x4556;
}  // namespace

CenterSet kmeanspp_seed(const PointSet& u, std::size_t k, double z, std::uint64_t seed) {
    require(u.n >= 1, "kmeanspp_seed: empty input");
    require(k >= 1 && k <= u.n, "kmeanspp_seed: need 1 <= k <= n");
    require(z >= 1.0, "kmeanspp_seed: z must be >= 1");

    Rng rng(sub_seed(seed, kSeedTag));
    std::vector<std::size_t> chosen;
    std::vector<char> is_chosen(u.n, 0);
    std::vector<double> cur(u.n, 0.0);  // d_z(x, chosen so far)

    const std::size_t first = rng.next_below(u.n);
    chosen.push_back(first);
    is_chosen[first] = 1;
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < u.n; ++i)
        cur[i] = dist_z(u.row(i), u.row(first), u.d, z);

    while (chosen.size() < k) {
        const double total = blocked_sum_serial(cur.data(), u.n);
        std::size_t pick = u.n;
        if (total > 0.0) {
            const double target = rng.next_double() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < u.n; ++i) {
                acc += cur[i];
                if (target < acc) {
                    pick = i;
                    break;
                }
            }
            if (pick == u.n) {  // rounding spill: take the last positive mass
                for (std::size_t i = u.n; i-- > 0;)
                    if (cur[i] > 0.0) {
                        pick = i;
                        break;
                    }
            }
        }
        if (pick == u.n) {  // no mass left: lowest-index unchosen point
            for (std::size_t i = 0; i < u.n; ++i)
                if (!is_chosen[i]) {
                    pick = i;
                    break;
                }
        }
        chosen.push_back(pick);
        is_chosen[pick] = 1;
        const double* crow = u.row(pick);
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < u.n; ++i) {
            const double dz = dist_z(u.row(i), crow, u.d, z);
            if (dz < cur[i]) cur[i] = dz;
        }
    }

    CenterSet out;
    out.pts = gather_rows(u, chosen);
    out.source_indices = std::move(chosen);
    return out;
}

const char* strategy_name(EvalStrategy s) {
    switch (s) {
        case EvalStrategy::uniform_from_data: return "uniform-from-data";
        case EvalStrategy::kmeanspp: return "kmeanspp";
        case EvalStrategy::gaussian_random: return "gaussian-random";
    }
    return "?";
}

std::vector<EvalStrategy> all_strategies() {
    return {EvalStrategy::uniform_from_data, EvalStrategy::kmeanspp,
            EvalStrategy::gaussian_random};
}

std::vector<EvalStrategy> parse_strategies(const std::string& csv) {
    std::vector<EvalStrategy> out;
    std::size_t at = 0;
    while (at <= csv.size()) {
        const std::size_t next = csv.find(',', at);
        const std::string tok =
            csv.substr(at, next == std::string::npos ? std::string::npos : next - at);
        if (tok == "uniform-from-data")
            out.push_back(EvalStrategy::uniform_from_data);
        else if (tok == "kmeanspp")
            out.push_back(EvalStrategy::kmeanspp);
        else if (tok == "gaussian-random")
            out.push_back(EvalStrategy::gaussian_random);
        else if (!tok.empty())
            throw std::invalid_argument("unknown evaluation strategy: " + tok);
        if (next == std::string::npos) break;
        at = next + 1;
    }
    require(!out.empty(), "parse_strategies: empty strategy list");
    return out;
}

namespace {
CenterSet draw_eval_centers(const PointSet& u, std::size_t k, double z, EvalStrategy s,
                            const std::vector<double>& mean, const std::vector<double>& stddev,
                            std::uint64_t seed) {
    switch (s) {
        case EvalStrategy::uniform_from_data: {
            Rng rng(seed);
            std::vector<char> used(u.n, 0);
            std::vector<std::size_t> idx;
            while (idx.size() < k) {
                const std::size_t i = rng.next_below(u.n);
                if (!used[i]) {
                    used[i] = 1;
                    idx.push_back(i);
                }
            }
            CenterSet c;
            c.pts = gather_rows(u, idx);
            c.source_indices = std::move(idx);
            return c;
        }
        case EvalStrategy::kmeanspp:
            return kmeanspp_seed(u, k, z, seed);
        case EvalStrategy::gaussian_random: {
            Rng rng(seed);
            CenterSet c;
            c.pts = PointSet(k, u.d);
            for (std::size_t i = 0; i < k; ++i) {
                double* row = c.pts.row(i);
                for (std::size_t j = 0; j < u.d; ++j)
                    row[j] = mean[j] + stddev[j] * rng.next_gaussian();
            }
            return c;
        }
    }
    throw std::invalid_argument("draw_eval_centers: bad strategy");
}
}  // namespace

DistortionStats empirical_distortion(const PointSet& u, const WeightedPointSet& coreset,
                                     const ClusteringParams& p, std::size_t trials_per_strategy,
                                     const std::vector<EvalStrategy>& strategies,
                                     std::uint64_t seed) {
    validate(p);
    require(trials_per_strategy >= 1, "empirical_distortion: trials must be >= 1");
    require(!strategies.empty(), "empirical_distortion: no strategies");
    require(u.d == coreset.points.d, "empirical_distortion: dimension mismatch");
    require(p.k <= u.n, "empirical_distortion: k > n");

    // per-coordinate moments for the gaussian-random strategy
    std::vector<double> mean(u.d, 0.0), stddev(u.d, 0.0);
    for (std::size_t j = 0; j < u.d; ++j) {
        const double m =
            blocked_transform_sum_serial(u.n, [&](std::size_t i) { return u.row(i)[j]; }) /
            static_cast<double>(u.n);
        const double var = blocked_transform_sum_serial(u.n, [&](std::size_t i) {
                               const double dv = u.row(i)[j] - m;
                               return dv * dv;
                           }) /
                           static_cast<double>(u.n);
        mean[j] = m;
        stddev[j] = std::sqrt(var);
    }

    DistortionStats stats;
    const std::uint64_t base = sub_seed(seed, kEvalTag);
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        const std::uint64_t sbase = sub_seed(base, static_cast<std::uint64_t>(strategies[s]));
        for (std::size_t t = 0; t < trials_per_strategy; ++t) {
            const CenterSet c =
                draw_eval_centers(u, p.k, p.z, strategies[s], mean, stddev, sub_seed(sbase, t));
            const double denom = cost_z(u, c, p.z);
            if (denom <= 0.0) {
                ++stats.skipped;
                continue;
            }
            const double num = cost_z(coreset, c, p.z);
            stats.errors.push_back(std::abs(num - denom) / denom);
        }
    }

    stats.trials_run = stats.errors.size();
    if (!stats.errors.empty()) {
        stats.mean = blocked_sum_serial(stats.errors.data(), stats.errors.size()) /
                     static_cast<double>(stats.errors.size());
        std::vector<double> sorted = stats.errors;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t at = static_cast<std::size_t>(
            std::ceil(0.95 * static_cast<double>(sorted.size())));
        stats.p95 = sorted[at > 0 ? at - 1 : 0];
        stats.max = sorted.back();
    }
    return stats;
}

namespace {
double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

PhaseTimes median_phases(const std::vector<PhaseTimes>& runs) {
    std::vector<double> c, s, m, t;
    for (const auto& r : runs) {
        c.push_back(r.center_ms);
        s.push_back(r.score_ms);
        m.push_back(r.sample_ms);
        t.push_back(r.total_ms);
    }
    return {median_of(c), median_of(s), median_of(m), median_of(t)};
}
}  // namespace

BenchResult bench(const PointSet& u, const ClusteringParams& p, const CoresetConfig& cfg,
                  std::size_t repeats, BenchBaseline baseline) {
    require(repeats >= 3, "bench: repeats must be >= 3");
    BenchResult res;

    const auto run_pipeline = [&](bool force_exact, PhaseTimes& out, CoresetDiagnostics& diag) {
        std::vector<PhaseTimes> runs;
        for (std::size_t r = 0; r < repeats; ++r) {
            CoresetConfig c = cfg;
            c.force_exact = force_exact;
            CoresetDiagnostics d;
            (void)coreset_is(u, p, c, &d);
            runs.push_back(d.phases);
            diag = d;
        }
        out = median_phases(runs);
    };

    if (baseline == BenchBaseline::sketch || baseline == BenchBaseline::both) {
        run_pipeline(false, res.sketch, res.sketch_diag);
        res.ran_sketch = true;
    }
    if (baseline == BenchBaseline::exact || baseline == BenchBaseline::both) {
        run_pipeline(true, res.exact, res.exact_diag);
        res.ran_exact = true;
    }
    if (res.ran_sketch && res.ran_exact && res.sketch.total_ms > 0.0)
        res.speedup = res.exact.total_ms / res.sketch.total_ms;
    return res;
}

}  // namespace coreset
