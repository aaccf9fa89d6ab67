// Command-line front end: synthetic data, center sets, coresets, evaluation,
// and the sketch-vs-exact benchmark. Reports are JSON with a stable key set.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coreset/datagen.hpp"
#include "coreset/evaluate.hpp"
#include "coreset/importance.hpp"
#include "coreset/io.hpp"
#include "coreset/parallel.hpp"
#include "coreset/rings.hpp"
#include "json.hpp"

using namespace coreset;
using nlohmann::json;

namespace {

// every subcommand that writes a report uses this exact key set
json make_report(const std::string& method, std::size_t n, std::size_t d,
                 const ClusteringParams& p, std::size_t n_out, std::uint64_t seed) {
    return json{{"method", method},
                {"n", n},
                {"d", d},
                {"k", p.k},
                {"z", p.z},
                {"eps", p.eps},
                {"delta", p.delta},
                {"N", n_out},
                {"seed", seed},
                {"phases_ms", json::object()},
                {"distortion", json::object()},
                {"strategies", json::array()},
                {"bench", json::object()}};
}

void write_report(const std::string& path, const json& report) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open report file: " + path);
    os << report.dump(2) << "\n";
}

json phases_json(const PhaseTimes& t) {
    return json{{"center_ms", t.center_ms},
                {"score_ms", t.score_ms},
                {"sample_ms", t.sample_ms},
                {"total_ms", t.total_ms}};
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();  // honor CORESET_THREADS before any parallel region

    CLI::App app{"coreset construction and evaluation for (k,z)-clustering"};
    app.require_subcommand(1);

    // ---- gen-data ----
    auto* gen = app.add_subcommand("gen-data", "generate a gaussian-mixture point set");
    std::size_t g_n = 1000, g_d = 2, g_ktrue = 4;
    double g_spread = 10.0, g_sigma = 1.0;
    std::uint64_t g_seed = 0;
    std::string g_out;
    gen->add_option("--n", g_n, "number of points")->required();
    gen->add_option("--d", g_d, "dimension")->required();
    gen->add_option("--k-true", g_ktrue, "number of mixture components")->required();
    gen->add_option("--spread", g_spread, "centers uniform in [-spread, spread]^d");
    gen->add_option("--sigma", g_sigma, "within-component standard deviation");
    gen->add_option("--seed", g_seed, "rng seed");
    gen->add_option("--out", g_out, "output point file (.csv or binary)")->required();

    // ---- center-set ----
    auto* cs = app.add_subcommand("center-set", "successive-sampling center set");
    std::string cs_in, cs_out;
    std::size_t cs_k = 8;
    double cs_z = 2.0, cs_alpha = 8.0, cs_beta = 0.5, cs_eps0 = 0.1, cs_delta0 = 0.05;
    std::uint64_t cs_seed = 0;
    cs->add_option("--in", cs_in, "input point file")->required();
    cs->add_option("--k", cs_k, "number of clusters")->required();
    cs->add_option("--z", cs_z, "cost exponent (1 = k-median, 2 = k-means)");
    cs->add_option("--alpha", cs_alpha, "oversampling constant");
    cs->add_option("--beta", cs_beta, "coverage fraction per round");
    cs->add_option("--eps0", cs_eps0, "estimator accuracy");
    cs->add_option("--delta0", cs_delta0, "estimator failure probability");
    cs->add_option("--seed", cs_seed, "rng seed");
    cs->add_option("--out", cs_out, "output point file for V")->required();

    // ---- coreset ----
    auto* co = app.add_subcommand("coreset", "build a coreset (importance or group sampling)");
    std::string co_in, co_out, co_method = "is", co_report;
    std::size_t co_k = 8, co_nsamples = 0;
    double co_z = 2.0, co_eps = 0.1, co_delta = 0.1;
    std::uint64_t co_seed = 0;
    co->add_option("--in", co_in, "input point file")->required();
    co->add_option("--method", co_method, "is | group")
        ->check(CLI::IsMember({"is", "group"}));
    co->add_option("--k", co_k, "number of clusters")->required();
    co->add_option("--z", co_z, "cost exponent");
    co->add_option("--eps", co_eps, "target accuracy");
    co->add_option("--delta", co_delta, "failure probability");
    co->add_option("--n-samples", co_nsamples,
                   "override sample count (is: draws, group: per-group size); 0 = formula");
    co->add_option("--seed", co_seed, "rng seed");
    co->add_option("--out", co_out, "output coreset file")->required();
    co->add_option("--report", co_report, "optional JSON report path");

    // ---- evaluate ----
    auto* ev = app.add_subcommand("evaluate", "empirical distortion of a stored coreset");
    std::string ev_in, ev_coreset, ev_report, ev_strategies =
        "uniform-from-data,kmeanspp,gaussian-random";
    std::size_t ev_k = 8, ev_trials = 67;
    double ev_z = 2.0;
    std::uint64_t ev_seed = 0;
    ev->add_option("--in", ev_in, "full data point file")->required();
    ev->add_option("--coreset", ev_coreset, "coreset file")->required();
    ev->add_option("--k", ev_k, "number of clusters")->required();
    ev->add_option("--z", ev_z, "cost exponent");
    ev->add_option("--trials", ev_trials, "trials per strategy");
    ev->add_option("--strategies", ev_strategies, "comma-separated strategy list");
    ev->add_option("--seed", ev_seed, "rng seed");
    ev->add_option("--report", ev_report, "JSON report path")->required();

    // ---- bench ----
    auto* be = app.add_subcommand("bench", "sketch vs exact pipeline timing");
    std::string be_in, be_report, be_baseline = "both";
    std::size_t be_k = 8, be_repeats = 5, be_nsamples = 0;
    double be_z = 2.0, be_eps = 0.1, be_delta = 0.1, be_cm = 0.25;
    std::uint64_t be_seed = 0;
    be->add_option("--in", be_in, "input point file")->required();
    be->add_option("--k", be_k, "number of clusters")->required();
    be->add_option("--z", be_z, "cost exponent");
    be->add_option("--eps", be_eps, "target accuracy");
    be->add_option("--delta", be_delta, "failure probability");
    be->add_option("--repeats", be_repeats, "timing repeats (median)");
    be->add_option("--baseline", be_baseline, "sketch | exact | both")
        ->check(CLI::IsMember({"sketch", "exact", "both"}));
    be->add_option("--n-samples", be_nsamples, "override sample count; 0 = formula");
    be->add_option("--c-m", be_cm,
                   "sketch-dimension constant (default favors projection at bench scale)");
    be->add_option("--seed", be_seed, "rng seed");
    be->add_option("--report", be_report, "JSON report path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const auto pts = gen_gaussian_mixture(g_n, g_d, g_ktrue, g_spread, g_sigma, g_seed);
            save_points(pts, g_out);
            std::printf("wrote %zu x %zu points to %s\n", pts.n, pts.d, g_out.c_str());
        } else if (cs->parsed()) {
            const auto u = load_points(cs_in);
            CenterGenConfig cfg;
            cfg.alpha = cs_alpha;
            cfg.beta = cs_beta;
            cfg.eps0 = cs_eps0;
            cfg.delta0 = cs_delta0;
            cfg.seed = cs_seed;
            const auto res = center_set_gen(u, cs_k, cs_z, cfg);
            save_points(res.v.pts, cs_out);
            std::printf("center set: |V| = %zu after %zu rounds -> %s\n", res.v.size(),
                        res.rounds, cs_out.c_str());
        } else if (co->parsed()) {
            const auto u = load_points(co_in);
            ClusteringParams p;
            p.k = co_k;
            p.z = co_z;
            p.eps = co_eps;
            p.delta = co_delta;
            json report = make_report(co_method, u.n, u.d, p, 0, co_seed);
            WeightedPointSet w;
            if (co_method == "is") {
                CoresetConfig cfg;
                cfg.n_samples = co_nsamples;
                cfg.seed = co_seed;
                CoresetDiagnostics diag;
                w = coreset_is(u, p, cfg, &diag);
                report["N"] = diag.n_draws;
                report["phases_ms"] = phases_json(diag.phases);
                report["bench"] = {{"cstar_size", diag.cstar_size},
                                   {"coreset_size", diag.coreset_size},
                                   {"weight_sum", diag.weight_sum}};
            } else {
                GroupCoresetConfig cfg;
                cfg.beta_override = co_nsamples;
                cfg.seed = co_seed;
                GroupDiagnostics diag;
                w = coreset_group(u, p, cfg, &diag);
                report["N"] = diag.beta_used;
                report["phases_ms"] = phases_json(diag.phases);
                report["bench"] = {{"cstar_size", diag.cstar_size},
                                   {"coreset_size", diag.coreset_size},
                                   {"weight_sum", diag.weight_sum},
                                   {"groups_sampled", diag.groups_sampled},
                                   {"discarded", diag.discarded_total}};
            }
            save_coreset(w, co_out);
            if (!co_report.empty()) write_report(co_report, report);
            std::printf("coreset (%s): %zu points -> %s\n", co_method.c_str(), w.points.n,
                        co_out.c_str());
        } else if (ev->parsed()) {
            const auto u = load_points(ev_in);
            const auto w = load_coreset(ev_coreset);
            ClusteringParams p;
            p.k = ev_k;
            p.z = ev_z;
            const auto strategies = parse_strategies(ev_strategies);
            const auto t0 = std::chrono::steady_clock::now();
            const auto stats = empirical_distortion(u, w, p, ev_trials, strategies, ev_seed);
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            json report = make_report("evaluate", u.n, u.d, p, w.points.n, ev_seed);
            report["phases_ms"] = {{"evaluate_ms", ms}};
            report["distortion"] = {{"mean", stats.mean},
                                    {"p95", stats.p95},
                                    {"max", stats.max},
                                    {"trials_run", stats.trials_run},
                                    {"skipped", stats.skipped}};
            for (const auto s : strategies) report["strategies"].push_back(strategy_name(s));
            write_report(ev_report, report);
            std::printf("distortion: mean %.4f  p95 %.4f  max %.4f over %zu trials -> %s\n",
                        stats.mean, stats.p95, stats.max, stats.trials_run, ev_report.c_str());
        } else if (be->parsed()) {
            const auto u = load_points(be_in);
            ClusteringParams p;
            p.k = be_k;
            p.z = be_z;
            p.eps = be_eps;
            p.delta = be_delta;
            CoresetConfig cfg;
            cfg.n_samples = be_nsamples;
            cfg.seed = be_seed;
            cfg.c_m = be_cm;
            cfg.center_cfg.c_m = be_cm;
            const BenchBaseline bl = be_baseline == "sketch"  ? BenchBaseline::sketch
                                     : be_baseline == "exact" ? BenchBaseline::exact
                                                              : BenchBaseline::both;
            const auto r = bench(u, p, cfg, be_repeats, bl);
            json report = make_report("bench", u.n, u.d, p, cfg.n_samples, be_seed);
            report["bench"] = {{"baseline", be_baseline},
                               {"repeats", be_repeats},
                               {"speedup", r.speedup},
                               {"ran_sketch", r.ran_sketch},
                               {"ran_exact", r.ran_exact}};
            if (r.ran_sketch) {
                report["phases_ms"]["sketch"] = phases_json(r.sketch);
                report["bench"]["sketch_coreset_size"] = r.sketch_diag.coreset_size;
            }
            if (r.ran_exact) {
                report["phases_ms"]["exact"] = phases_json(r.exact);
                report["bench"]["exact_coreset_size"] = r.exact_diag.coreset_size;
            }
            write_report(be_report, report);
            if (r.ran_sketch)
                std::printf("sketch pipeline: median total %.1f ms\n", r.sketch.total_ms);
            if (r.ran_exact)
                std::printf("exact pipeline:  median total %.1f ms\n", r.exact.total_ms);
            if (r.ran_sketch && r.ran_exact) std::printf("speedup: %.2fx\n", r.speedup);
            std::printf("report -> %s\n", be_report.c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
