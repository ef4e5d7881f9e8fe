#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "ssqcv/core.hpp"
#include "ssqcv/relax.hpp"

namespace ssqcv {

struct HistogramRun {
    std::size_t m = 1000;
    double lambda = 0.0;
    std::uint64_t seed = 0;
};

struct HistogramResult {
    std::vector<double> cell_norms;     ///< objectives of rounded Gaussian points
    std::vector<double> uniform_norms;  ///< objectives of uniformly random permutations
    double mean_cell = 0.0;
    double mean_uniform = 0.0;
};

/// Compares rounding-driven permutation sampling against uniform sampling.
///
/// Q comes from Frank-Wolfe and is perturbed by run.lambda when positive.
/// Draw order: perturbation, then m standard normal points (not normalized;
/// rounding is scale invariant), then m Fisher-Yates shuffles.
HistogramResult histogram_experiment(const GraphInstance& inst, const HistogramRun& run,
                                     const FwConfig& fw = {});

/// Two-column CSV "label,norm" with rows labelled `cell` and `uniform`.
void write_histogram_csv(std::ostream& out, const HistogramResult& result);

double mean(const std::vector<double>& v);

}  // namespace ssqcv
