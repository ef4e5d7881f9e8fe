#pragma once

#include <vector>

#include "ssqcv/core.hpp"

namespace ssqcv {

/// A matrix that partitions R^n into permutation cells, tagged by origin.
struct PartitionMatrix {
    enum class Kind { doubly_stochastic, perturbed, general };

    Matrix q;
    Kind kind = Kind::general;

    std::size_t size() const { return static_cast<std::size_t>(q.rows()); }
};

struct FwConfig {
    int max_iters = 500;
    /// Stop once the relative objective decrease stays below this for `patience` iterations.
    double rel_tol = 1e-7;
    int patience = 5;
    /// Bisection width for the roots of the line-search derivative.
    double line_search_tol = 1e-12;

    void validate() const;
};

struct FwResult {
    PartitionMatrix q;
    /// Objective ||A - Q^T B Q||_F^2 at the start point and after each iteration.
    std::vector<double> objective;
    int iterations = 0;
    /// Largest |row or column sum - 1| and smallest entry over all iterates.
    double max_sum_violation = 0.0;
    double min_entry = 0.0;
};

/// ||A - Q^T B Q||_F^2.
double relaxed_objective(const GraphInstance& inst, const Matrix& q);

/// Gradient of ||A - Q^T B Q||_F^2 with respect to Q: -2 (B Q R^T + B^T Q R), R = A - Q^T B Q.
Matrix fw_gradient(const GraphInstance& inst, const Matrix& q);

/// Minimizes ||A - Q^T B Q||_F^2 over doubly stochastic Q by Frank-Wolfe,
/// starting at the barycenter, with exact line search on the quartic step polynomial.
FwResult frank_wolfe_trace(const GraphInstance& inst, const FwConfig& cfg = {});

PartitionMatrix frank_wolfe(const GraphInstance& inst, const FwConfig& cfg = {});

/// Exact minimizer over s in [0, 1] of the quartic sum_k coef[k] s^k.
/// Returns a negative value if the polynomial is degenerate (non-finite).
double minimize_quartic_on_unit(const double (&coef)[5], double tol);

}  // namespace ssqcv
