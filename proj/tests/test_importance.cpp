#include <cmath>
#include <map>
#include <vector>

#include "coreset/datagen.hpp"
#include "coreset/importance.hpp"
#include "coreset/metrics.hpp"
#include "coreset/parallel.hpp"
#include "coreset/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coreset;

namespace {

CenterSet centers_from(const PointSet& u, std::vector<std::size_t> idx) {
    CenterSet c;
    c.pts = oracle::rows_subset(u, idx);
    c.source_indices = std::move(idx);
    return c;
}

}  // namespace

TEST_CASE("assign_and_score invariants on a random instance") {
    const auto u = oracle::random_points(400, 6, 601, 5.0);
    const auto cstar = centers_from(u, {3, 77, 150, 288});
    const auto t = assign_and_score(u, cstar, 2.0, 0.1, 0.05, 11);

    REQUIRE(t.assigned.size() == u.n);
    REQUIRE(t.score.size() == u.n);
    REQUIRE(t.preimage_size.size() == 4);

    std::size_t pre_total = 0;
    for (std::size_t s : t.preimage_size) pre_total += s;
    CHECK(pre_total == u.n);

    long double dist_sum = 0.0L, score_sum = 0.0L;
    for (std::size_t i = 0; i < u.n; ++i) {
        REQUIRE(t.assigned[i] < 4);
        CHECK(t.approx_dist[i] >= 0.0);
        CHECK(t.score[i] > 0.0);
        dist_sum += t.approx_dist[i];
        score_sum += t.score[i];
        // recompute the published formula from the table's own ingredients
        const double want = t.approx_dist[i] / t.approx_total_cost +
                            1.0 / static_cast<double>(t.preimage_size[t.assigned[i]]);
        CHECK(t.score[i] == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(t.approx_total_cost ==
          doctest::Approx(static_cast<double>(dist_sum)).epsilon(1e-12));
    CHECK(t.total_score ==
          doctest::Approx(static_cast<double>(score_sum)).epsilon(1e-12));
    // sum of scores = 1 + sum_v 1 = 1 + |C*| when every preimage is non-empty
    CHECK(t.total_score == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("points sitting on their centers fall back to the preimage term") {
    // U = C*: every approximate distance is 0, total cost 0, score = 1/1
    const auto u = oracle::random_points(12, 4, 602);
    std::vector<std::size_t> all(12);
    for (std::size_t i = 0; i < 12; ++i) all[i] = i;
    const auto cstar = centers_from(u, all);
    const auto t = assign_and_score(u, cstar, 2.0, 0.1, 0.05, 13);
    CHECK(t.approx_total_cost == 0.0);
    for (std::size_t i = 0; i < u.n; ++i) {
        CHECK(t.assigned[i] == i);
        CHECK(t.score[i] == 1.0);
    }
    CHECK(t.total_score == doctest::Approx(12.0));
}

TEST_CASE("single center: scores sum to two") {
    const auto u = oracle::random_points(150, 3, 603, 2.0);
    const auto cstar = centers_from(u, {42});
    const auto t = assign_and_score(u, cstar, 1.0, 0.1, 0.05, 17);
    // sum sigma~ = cost/cost + n*(1/n) = 2
    CHECK(t.total_score == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(t.preimage_size[0] == u.n);
}

TEST_CASE("alias table reproduces its weight distribution") {
    const std::vector<double> w{1.0, 2.0, 3.0};
    AliasTable at(w);
    REQUIRE(at.size() == 3);
    Rng rng(604);
    std::vector<int> hits(3, 0);
    const int draws = 300000;
    for (int i = 0; i < draws; ++i) ++hits[at.draw(rng)];
    for (std::size_t j = 0; j < 3; ++j) {
        const double p = w[j] / 6.0;
        CHECK(hits[j] > draws * p * 0.97);
        CHECK(hits[j] < draws * p * 1.03);
    }
    CHECK_THROWS_AS(AliasTable(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(AliasTable(std::vector<double>{0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(AliasTable(std::vector<double>{1.0, -1.0}), std::invalid_argument);

    // a zero-weight entry among positive ones is never drawn
    AliasTable zt(std::vector<double>{0.0, 1.0});
    for (int i = 0; i < 1000; ++i) CHECK(zt.draw(rng) == 1);
}

TEST_CASE("sample_coreset merges duplicates and normalizes weights") {
    // Uniform scores: every draw has weight total/(N*score) = n/N.
    const auto u = oracle::random_points(100, 2, 605);
    ScoreTable t;
    t.assigned.assign(100, 0);
    t.approx_dist.assign(100, 0.0);
    t.preimage_size = {100};
    t.score.assign(100, 1.0);
    t.total_score = 100.0;
    const auto w = sample_coreset(u, t, 50, 606);
    REQUIRE(w.points.n == w.weights.size());
    CHECK(w.points.n <= 50);
    long double sum = 0.0L;
    for (double x : w.weights) {
        // every weight is an integer multiple of n/N = 2
        CHECK(std::fmod(x, 2.0) == 0.0);
        sum += x;
    }
    CHECK(static_cast<double>(sum) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("sampling is unbiased: E[sum of weights] = n") {
    // Build a genuinely skewed score table through the real scoring path.
    const auto u = gen_gaussian_mixture(100, 3, 3, 8.0, 1.0, 607);
    const auto cstar = centers_from(u, {0, 1, 2});
    const auto t = assign_and_score(u, cstar, 2.0, 0.1, 0.05, 19);

    const int trials = 4000;
    const std::size_t draws = 32;
    long double sum = 0.0L, sum2 = 0.0L;
    for (int trial = 0; trial < trials; ++trial) {
        const auto w = sample_coreset(u, t, draws, 10000 + trial);
        long double s = 0.0L;
        for (double x : w.weights) s += x;
        sum += s;
        sum2 += s * s;
    }
    const double mean = static_cast<double>(sum / trials);
    const double var =
        static_cast<double>(sum2 / trials) - mean * mean;
    const double se = std::sqrt(std::max(var, 1e-12) / trials);
    CHECK(std::abs(mean - 100.0) <= 4.0 * se + 1e-9);
}

TEST_CASE("oversampling a uniform instance reproduces unit weights") {
    const auto u = oracle::random_points(64, 2, 608);
    std::vector<std::size_t> all(64);
    for (std::size_t i = 0; i < 64; ++i) all[i] = i;
    const auto cstar = centers_from(u, all);
    const auto t = assign_and_score(u, cstar, 2.0, 0.1, 0.05, 21);
    const auto w = sample_coreset(u, t, 64 * 6, 609);
    // coupon-collector: with 6n draws we expect ~99.8% coverage
    CHECK(w.points.n >= 55);
    long double sum = 0.0L;
    for (double x : w.weights) sum += x;
    CHECK(static_cast<double>(sum) == doctest::Approx(64.0).epsilon(1e-12));
    double mean_w = static_cast<double>(sum) / static_cast<double>(w.points.n);
    CHECK(mean_w > 0.5);
    CHECK(mean_w < 2.0);
}

TEST_CASE("default_sample_count formula and clamps") {
    ClusteringParams p;
    p.k = 5;
    p.z = 1.0;
    p.eps = 0.1;
    p.delta = 0.1;
    // ceil(0.1^-4 * 5 * ln 5 * ln(5/0.01)) = 500102, clamped by n below
    CHECK(default_sample_count(p, 1u << 30) == 500102);
    CHECK(default_sample_count(p, 1000) == 1000);
    p.k = 1;  // ln(1) = 0 -> lower clamp kicks in
    CHECK(default_sample_count(p, 1000) == 1);
}

TEST_CASE("coreset_is end to end: structure, diagnostics, determinism") {
    const auto u = gen_gaussian_mixture(3000, 8, 4, 10.0, 1.0, 610);
    ClusteringParams p;
    p.k = 4;
    p.z = 2.0;
    p.eps = 0.1;
    p.delta = 0.1;
    CoresetConfig cfg;
    cfg.n_samples = 400;
    cfg.center_cfg.alpha = 4.0;
    cfg.seed = 611;

    CoresetDiagnostics diag;
    const auto w = coreset_is(u, p, cfg, &diag);
    CHECK(w.points.d == u.d);
    CHECK(w.points.n <= 400);
    CHECK(w.points.n == w.weights.size());
    for (double x : w.weights) {
        CHECK(x > 0.0);
        CHECK(std::isfinite(x));
    }
    CHECK(diag.n_draws == 400);
    CHECK(diag.coreset_size == w.points.n);
    CHECK(diag.cstar_size > 0);
    CHECK(diag.total_score > 1.0);
    CHECK(diag.phases.total_ms >= 0.0);

    // same seed, different thread counts: byte-identical output
    std::vector<WeightedPointSet> runs;
    for (int t : {1, 4, 16}) {
        apply_thread_cap(t);
        runs.push_back(coreset_is(u, p, cfg));
    }
    apply_thread_cap(0);
    CHECK(runs[0].points.data == runs[1].points.data);
    CHECK(runs[0].points.data == runs[2].points.data);
    CHECK(runs[0].weights == runs[1].weights);
    CHECK(runs[0].weights == runs[2].weights);
    CHECK(runs[0].points.data == w.points.data);

    // a coreset this large on a crisp mixture approximates the cost at a
    // few plausible center sets (loose 25% band; the acceptance suite does
    // the statistical version)
    for (std::uint64_t s : {1u, 2u, 3u}) {
        const auto c = oracle::random_points(4, 8, 700 + s, 10.0);
        const double full = oracle::cost(u, c, 2.0);
        const double approx = oracle::cost_weighted(w, c, 2.0);
        CHECK(std::abs(approx - full) <= 0.25 * full);
    }
}

TEST_CASE("coreset_is validation") {
    const auto u = oracle::random_points(50, 2, 612);
    ClusteringParams p;
    p.k = 3;
    p.z = 2.0;
    p.eps = 0.1;
    p.delta = 0.1;
    CoresetConfig cfg;
    cfg.n_samples = 10;
    PointSet empty;
    empty.d = 2;
    CHECK_THROWS_AS(coreset_is(empty, p, cfg), std::invalid_argument);
    p.eps = 0.5;
    CHECK_THROWS_AS(coreset_is(u, p, cfg), std::invalid_argument);
    p.eps = 0.1;
    p.k = 0;
    CHECK_THROWS_AS(coreset_is(u, p, cfg), std::invalid_argument);
    p.k = 3;
    p.z = 0.0;
    CHECK_THROWS_AS(coreset_is(u, p, cfg), std::invalid_argument);
}
