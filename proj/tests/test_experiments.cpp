#include <doctest.h>

#include <sstream>

#include "ssqcv/experiments.hpp"
#include "ssqcv/qaplib.hpp"
#include "ssqcv/report.hpp"
#include "test_support.hpp"

using namespace ssqcv;
using namespace ssqcv::testing;

TEST_CASE("histogram_experiment shapes and determinism") {
    const auto [inst, truth] = synth_instance({8, 0.1, 1});
    const HistogramResult one = histogram_experiment(inst, {1, 0.0, 2});
    CHECK(one.cell_norms.size() == 1);
    CHECK(one.uniform_norms.size() == 1);

    const HistogramResult a = histogram_experiment(inst, {50, 0.1, 3});
    const HistogramResult b = histogram_experiment(inst, {50, 0.1, 3});
    CHECK(a.cell_norms == b.cell_norms);
    CHECK(a.uniform_norms == b.uniform_norms);
    CHECK(a.mean_cell == doctest::Approx(mean(a.cell_norms)));
    for (double v : a.cell_norms)
        REQUIRE(v >= 0.0);

    CHECK_THROWS_AS(histogram_experiment(inst, {0, 0.0, 1}), InputError);
    CHECK_THROWS_AS(histogram_experiment(inst, {5, -0.1, 1}), InputError);
}

TEST_CASE("write_histogram_csv") {
    HistogramResult r;
    r.cell_norms = {1.5};
    r.uniform_norms = {2.25, 0.1};
    std::ostringstream os;
    write_histogram_csv(os, r);
    CHECK(os.str() == "label,norm\ncell,1.5\nuniform,2.25\nuniform,0.10000000000000001\n");
}

TEST_CASE("mean") {
    CHECK(mean({}) == 0.0);
    CHECK(mean({1.0, 2.0, 6.0}) == 3.0);
}

TEST_CASE("make_bench_row is order independent") {
    std::vector<SolveResult> results(3);
    for (std::size_t k = 0; k < 3; ++k) {
        results[k].seed = k + 1;
        results[k].best_trace = 10.0 + static_cast<double>(k);
        results[k].wall_time = 0.5;
    }
    const BenchRow row = make_bench_row("x", results);
    std::reverse(results.begin(), results.end());
    const BenchRow rev = make_bench_row("x", results);
    CHECK(row.runs == 3);
    CHECK(row.best_trace == 10.0);
    CHECK(row.mean_trace == 11.0);
    CHECK(row.mean_seconds == 0.5);
    CHECK(rev.mean_trace == row.mean_trace);
    CHECK(row.best_trace <= row.mean_trace);
}

TEST_CASE("baselines and bench CSV") {
    std::istringstream in("instance,optimum,path_value\nchr12c,11156,18048\nfoo,,\n");
    const auto b = read_baselines(in);
    REQUIRE(b.size() == 2);
    CHECK(*b.at("chr12c").optimum == 11156.0);
    CHECK(*b.at("chr12c").path_value == 18048.0);
    CHECK_FALSE(b.at("foo").optimum.has_value());

    std::istringstream bad("name,x\n");
    CHECK_THROWS_AS(read_baselines(bad), InputError);

    BenchRow row{"chr12c", 2, 12000.5, 11500, 0.25, 11156.0, std::nullopt};
    std::ostringstream os;
    write_bench_csv(os, {row});
    CHECK(os.str() ==
          "instance,runs,mean_trace,best_trace,mean_seconds,optimum,path_value\n"
          "chr12c,2,12000.5,11500,0.25,11156,\n");
}

TEST_CASE("solve_json layout") {
    const auto [inst, truth] = synth_instance({5, 0.1, 1});
    SamplerConfig cfg;
    cfg.total_iterations = 50;
    cfg.l = 20;
    cfg.m = 10;
    const SolveResult res = solve(inst, cfg);
    const auto j = solve_json(inst, cfg, res, true);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items())
        keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"instance", "n", "best_trace", "best_gm_norm", "baseline_gm_norm",
                                           "permutation", "iterations", "seed", "delta_max", "perturbed",
                                           "reversed_start", "wall_time_s", "config", "trajectory"});
    CHECK(j["permutation"].size() == 5);
    CHECK(j["best_gm_norm"].get<double>() == res.best_e);
    CHECK_FALSE(solve_json(inst, cfg, res, false).contains("trajectory"));
}
