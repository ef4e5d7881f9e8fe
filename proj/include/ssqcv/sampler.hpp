#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ssqcv/adapt.hpp"
#include "ssqcv/core.hpp"
#include "ssqcv/relax.hpp"

namespace ssqcv {

struct SamplerConfig {
    std::size_t total_iterations = 100000;
    std::size_t m = 100;        ///< sphere points for the delta_max estimate
    std::size_t l = 1000;       ///< pre-samples
    double lambda = 0.1;        ///< perturbation scale
    std::size_t relearn = 0;    ///< refit period T; 0 means total_iterations / 10
    double exponent = 0.6;
    std::uint64_t seed = 0;
    double margin = 0.05;
    FwConfig fw;
    /// Record one (t, delta, target) entry per iteration in SolveResult::tracking.
    bool record_tracking = false;

    std::size_t relearn_period() const;
    void validate() const;
};

struct Checkpoint {
    std::size_t t = 0;
    double energy = 0.0;
    double best_energy = 0.0;
};

struct TrackingSample {
    std::size_t t = 0;
    double log_variance = 0.0;
    double delta = 0.0;
    double target = 0.0;
};

struct SolveResult {
    Permutation best_p;
    double best_e = 0.0;
    double best_trace = 0.0;
    /// E0: objective of the Hungarian projection of the relaxed solution.
    double baseline_e = 0.0;
    double delta_max = 0.0;
    std::size_t iterations_run = 0;
    std::uint64_t seed = 0;
    double wall_time = 0.0;
    bool perturbed = false;
    bool reversed_start = false;
    std::vector<Checkpoint> trajectory;
    std::vector<TrackingSample> tracking;
};

/// Pure acceptance: 1 if e_star <= e, else 0.
double acceptance(double e, double e_star, std::size_t t);

/// Runs the full sampling strategy on `inst`.
///
/// Generator consumption order, all from one Rng seeded with cfg.seed:
///   1. n*n uniforms for the perturbation (only when it fires), row-major;
///   2. a sphere point for x0, only if the reverse map is unavailable;
///   3. M sphere points for delta_max;
///   4. pre-sample draws;
///   5. per iteration: n normals for the proposal, then one uniform u.
SolveResult solve(const GraphInstance& inst, const SamplerConfig& cfg);

}  // namespace ssqcv
