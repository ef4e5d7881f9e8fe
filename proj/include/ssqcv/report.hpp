#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssqcv/core.hpp"
#include "ssqcv/sampler.hpp"

namespace ssqcv {

/// One benchmark line: statistics of repeated seeded runs on one instance.
struct BenchRow {
    std::string instance;
    std::size_t runs = 0;
    double mean_trace = 0.0;
    double best_trace = 0.0;
    double mean_seconds = 0.0;
    std::optional<double> optimum;
    std::optional<double> path_value;
};

struct Baseline {
    std::optional<double> optimum;
    std::optional<double> path_value;
};

/// Reduces per-seed results into a row. Independent of the order of `results`
/// up to floating summation, which is done in ascending seed order.
BenchRow make_bench_row(const std::string& instance, std::vector<SolveResult> results);

/// Reads "instance,optimum,path_value" CSV (header required, empty fields allowed).
std::map<std::string, Baseline> read_baselines(std::istream& in);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Stable JSON document for a solve; key order is fixed.
nlohmann::ordered_json solve_json(const GraphInstance& inst, const SamplerConfig& cfg, const SolveResult& res,
                                  bool with_trajectory);

}  // namespace ssqcv
